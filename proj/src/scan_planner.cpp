#include "ptzinspect/scan_planner.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <optional>

#include "ptzinspect/pose_eval.hpp"
#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

void ScanConfig::validate() const {
    if (!(hfov_deg > 0.0) || !(vfov_deg > 0.0) || !std::isfinite(hfov_deg) || !std::isfinite(vfov_deg)) {
        throw Error(ErrorCategory::invalid_argument, "field of view must be positive and finite");
    }
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw Error(ErrorCategory::invalid_argument, "overlap factor mu must lie in [0, 1)");
    }
}

std::size_t ScanPlan::size() const noexcept {
    std::size_t n = 0;
    for (const auto& s : sections) {
        n += s.points.size();
    }
    return n;
}

std::vector<ScanPoint> select_scan_points(const PanTiltGrid& u, SectionKind kind, const ScanConfig& cfg) {
    cfg.validate();
    const bool swapped = kind == SectionKind::wing || kind == SectionKind::stabiliser;
    const double lambda = cfg.lambda();
    const double row_fov = swapped ? cfg.hfov_deg : cfg.vfov_deg;
    const double col_fov = swapped ? cfg.vfov_deg : cfg.hfov_deg;
    const auto row_value = [swapped](const PanTilt& c) { return swapped ? c.pan_deg : c.tilt_deg; };
    const auto col_value = [swapped](const PanTilt& c) { return swapped ? c.tilt_deg : c.pan_deg; };
    // Pan gaps are taken the short way round the circle.
    const auto row_gap_of = [swapped](double a, double b) { return swapped ? std::abs(wrap_degrees(a - b)) : std::abs(a - b); };
    const auto col_gap_of = [swapped](double a, double b) { return swapped ? std::abs(a - b) : std::abs(wrap_degrees(a - b)); };

    std::optional<std::size_t> last_row;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (u.cell(i, j)) {
                last_row = i;
                break;
            }
        }
    }

    std::vector<ScanPoint> out;
    std::optional<double> m_last;
    std::vector<double> row_vals;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        row_vals.clear();
        std::optional<std::size_t> last_col;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (const auto& c = u.cell(i, j)) {
                row_vals.push_back(row_value(*c));
                last_col = j;
            }
        }
        if (row_vals.empty()) {
            continue;
        }
        const double m_next = median(row_vals);
        const double row_gap = m_last ? row_gap_of(*m_last, m_next) : lambda * row_fov;
        const bool row_taken =
            row_gap >= lambda * row_fov || (i == *last_row && row_gap > row_fov / 2.0);
        if (!row_taken) {
            continue;
        }
        m_last = m_next;

        std::optional<double> n_last;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const auto& c = u.cell(i, j);
            if (!c) {
                continue;
            }
            const double n_next = col_value(*c);
            const double col_gap = n_last ? col_gap_of(*n_last, n_next) : lambda * col_fov;
            if (col_gap >= lambda * col_fov || (j == *last_col && col_gap > col_fov / 2.0)) {
                ScanPoint p;
                p.pan_deg = c->pan_deg;
                p.tilt_deg = c->tilt_deg;
                p.i = i;
                p.j = j;
                out.push_back(std::move(p));
                n_last = n_next;
            }
        }
    }
    return out;
}

void attach_labels(std::vector<ScanPoint>& points, const SurfaceGrid& grid) {
    for (ScanPoint& p : points) {
        if (p.i >= grid.rows() || p.j >= grid.cols()) {
            throw Error(ErrorCategory::internal_consistency,
                        "scan point index (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ") outside grid '" +
                            grid.name() + "'");
        }
        const auto& c = grid.cell(p.i, p.j);
        if (!c) {
            throw Error(ErrorCategory::internal_consistency,
                        "scan point (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ") refers to an absent cell of '" +
                            grid.name() + "'");
        }
        p.label = *c;
        p.section = grid.name();
    }
}

std::vector<ScanPoint> plan_section(const PanTiltGrid& u, const SurfaceGrid& grid, const ScanConfig& cfg) {
    if (u.rows() != grid.rows() || u.cols() != grid.cols()) {
        throw Error(ErrorCategory::invalid_argument, "pan-tilt array and surface grid '" + grid.name() +
                                                         "' have different shapes");
    }
    std::vector<ScanPoint> points = select_scan_points(u, grid.kind(), cfg);
    attach_labels(points, grid);
    return points;
}

namespace {

int kind_rank(SectionKind k) noexcept {
    switch (k) {
        case SectionKind::fuselage: return 0;
        case SectionKind::tail: return 1;
        case SectionKind::stabiliser: return 2;
        case SectionKind::wing: return 3;
    }
    return 4;
}

}  // namespace

ScanPlan plan_full(const std::vector<SectionInput>& sections, const ScanConfig& cfg, int quadrant) {
    const HalfRelevance half = quadrant_half(quadrant);
    cfg.validate();
    ScanPlan plan;
    plan.config = cfg;
    plan.quadrant = quadrant;

    std::vector<std::size_t> order(sections.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return kind_rank(sections[a].grid.kind()) < kind_rank(sections[b].grid.kind());
    });

    for (std::size_t k : order) {
        const SectionInput& s = sections[k];
        if (s.relevance != half) {
            plan.warnings.push_back("section '" + s.grid.name() + "' is marked " +
                                    std::string(relevance_name(s.relevance)) + " but quadrant " +
                                    std::to_string(quadrant) + " is in the " + std::string(relevance_name(half)));
        }
        plan.sections.push_back(SectionPlan{s.grid.name(), s.grid.kind(), plan_section(s.u, s.grid, cfg)});
    }
    return plan;
}

std::string format_plan_json(const ScanPlan& plan) {
    nlohmann::ordered_json doc;
    doc["config"] = {{"hfov_deg", plan.config.hfov_deg}, {"vfov_deg", plan.config.vfov_deg}, {"mu", plan.config.mu}};
    doc["quadrant"] = plan.quadrant;
    doc["warnings"] = plan.warnings;
    nlohmann::ordered_json secs = nlohmann::ordered_json::array();
    for (const SectionPlan& s : plan.sections) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        std::size_t seq = 0;
        for (const ScanPoint& p : s.points) {
            pts.push_back({{"seq", seq++},
                           {"i", p.i},
                           {"j", p.j},
                           {"pan_deg", p.pan_deg},
                           {"tilt_deg", p.tilt_deg},
                           {"label", {p.label.x, p.label.y, p.label.z}}});
        }
        secs.push_back({{"name", s.name}, {"kind", kind_name(s.kind)}, {"points", std::move(pts)}});
    }
    doc["sections"] = std::move(secs);
    return doc.dump(2) + "\n";
}

std::string format_plan_csv(const ScanPlan& plan) {
    std::string out = "section,seq,i,j,pan_deg,tilt_deg,x,y,z\n";
    for (const SectionPlan& s : plan.sections) {
        std::size_t seq = 0;
        for (const ScanPoint& p : s.points) {
            out += s.name + ',' + std::to_string(seq++) + ',' + std::to_string(p.i) + ',' + std::to_string(p.j) + ',' +
                   format_double(p.pan_deg) + ',' + format_double(p.tilt_deg) + ',' + format_double(p.label.x) + ',' +
                   format_double(p.label.y) + ',' + format_double(p.label.z) + '\n';
        }
    }
    return out;
}

ScanPlan parse_plan_json(std::string_view text, const std::string& source) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        ScanPlan plan;
        const auto& cfg = doc.at("config");
        plan.config = ScanConfig{cfg.at("hfov_deg").get<double>(), cfg.at("vfov_deg").get<double>(),
                                 cfg.at("mu").get<double>()};
        plan.config.validate();
        plan.quadrant = doc.at("quadrant").get<int>();
        if (doc.contains("warnings")) {
            plan.warnings = doc.at("warnings").get<std::vector<std::string>>();
        }
        for (const auto& s : doc.at("sections")) {
            SectionPlan sp;
            sp.name = s.at("name").get<std::string>();
            sp.kind = parse_kind(s.at("kind").get<std::string>());
            for (const auto& p : s.at("points")) {
                ScanPoint pt;
                pt.i = p.at("i").get<std::size_t>();
                pt.j = p.at("j").get<std::size_t>();
                pt.pan_deg = p.at("pan_deg").get<double>();
                pt.tilt_deg = p.at("tilt_deg").get<double>();
                const auto& l = p.at("label");
                pt.label = {l.at(0).get<double>(), l.at(1).get<double>(), l.at(2).get<double>()};
                pt.section = sp.name;
                sp.points.push_back(std::move(pt));
            }
            plan.sections.push_back(std::move(sp));
        }
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source, 0, e.what());
    }
}

ScanPlan load_plan(const std::filesystem::path& path) {
    return parse_plan_json(read_text_file(path), path.string());
}

}  // namespace ptzinspect
