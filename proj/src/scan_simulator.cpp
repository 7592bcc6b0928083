#include "ptzinspect/scan_simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <utility>

#include "ptzinspect/pose_eval.hpp"
#include "ptzinspect/rng.hpp"
#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

std::vector<ZoomLevel> default_zoom_table() {
    return {{1.0, 60.0, 33.75}, {13.0, 6.15, 3.46}};
}

VirtualPtz::VirtualPtz(CameraPose true_pose, int quadrant, std::vector<ZoomLevel> zoom_table)
    : pose_(true_pose), quadrant_(quadrant), zoom_table_(std::move(zoom_table)) {
    quadrant_beta(quadrant_);
    if (zoom_table_.empty()) {
        throw Error(ErrorCategory::invalid_argument, "zoom table is empty");
    }
    for (std::size_t k = 0; k < zoom_table_.size(); ++k) {
        const ZoomLevel& z = zoom_table_[k];
        if (!(z.hfov_deg > 0.0) || !(z.vfov_deg > 0.0) || !(z.zoom > 0.0)) {
            throw Error(ErrorCategory::invalid_argument, "zoom levels need positive zoom and FOVs");
        }
        if (k > 0) {
            const ZoomLevel& p = zoom_table_[k - 1];
            if (!(z.zoom > p.zoom) || z.hfov_deg > p.hfov_deg || z.vfov_deg > p.vfov_deg) {
                throw Error(ErrorCategory::invalid_argument,
                            "zoom table must increase in zoom with non-increasing FOVs");
            }
        }
    }
}

double VirtualPtz::alpha_true_deg() const {
    return compute_alpha({quadrant_, yaw_from_quaternion(pose_.orientation).yaw_deg, pose_.position}).alpha_deg;
}

void VirtualPtz::set_zoom(double zoom) {
    for (std::size_t k = 0; k < zoom_table_.size(); ++k) {
        if (zoom_table_[k].zoom == zoom) {
            zoom_index_ = k;
            return;
        }
    }
    throw Error(ErrorCategory::invalid_argument, "zoom level not in the table");
}

Ray VirtualPtz::optical_ray() const {
    return Ray::make(pose_.position, pantilt_direction(current_, alpha_true_deg()));
}

std::vector<std::pair<std::size_t, std::size_t>> footprint(const PanTiltGrid& u_true, const PanTilt& shot,
                                                           const ScanConfig& cfg) {
    const double half_h = cfg.hfov_deg / 2.0;
    const double half_v = cfg.vfov_deg / 2.0;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < u_true.rows(); ++i) {
        for (std::size_t j = 0; j < u_true.cols(); ++j) {
            const auto& c = u_true.cell(i, j);
            if (c && std::abs(wrap_degrees(c->pan_deg - shot.pan_deg)) <= half_h &&
                std::abs(c->tilt_deg - shot.tilt_deg) <= half_v) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

std::optional<Vec3> cast_to_surface(const Vec3& origin, const PanTilt& pt, double alpha_deg, const CylinderModel& cyl) {
    const IntersectResult r = try_intersect_cylinder(Ray::make(origin, pantilt_direction(pt, alpha_deg)), cyl);
    if (!r) {
        return std::nullopt;
    }
    return r.hit->point;
}

namespace {

// Bilinear height field over the present lattice squares of a grid.
class GridSurface {
public:
    explicit GridSurface(const SurfaceGrid& g) : g_(g), tail_(g.axis() == InterpolationAxis::x_over_zy) {
        if (g.rows() >= 2 && g.cols() >= 2) {
            du_ = g.row_values()[1] - g.row_values()[0];
            dv_ = g.col_values()[1] - g.col_values()[0];
        }
    }

    bool usable() const noexcept { return du_ > 0.0 && dv_ > 0.0; }
    double step() const noexcept { return std::min(du_, dv_); }

    // Signed offset of p from the surface along the interpolated axis.
    std::optional<double> offset(const Vec3& p) const {
        const double u = tail_ ? p.z : p.x;
        const double v = p.y;
        const double w = tail_ ? p.x : p.z;
        const auto& rv = g_.row_values();
        const auto& cv = g_.col_values();
        if (u < rv.front() - du_ || u > rv.back() + du_ || v < cv.front() - dv_ || v > cv.back() + dv_) {
            return std::nullopt;
        }
        const auto index = [](double x, double x0, double d, std::size_t n) {
            const double k = std::floor((x - x0) / d);
            return static_cast<long>(std::clamp(k, 0.0, static_cast<double>(n - 2)));
        };
        const long i0 = index(u, rv.front(), du_, g_.rows());
        const long j0 = index(v, cv.front(), dv_, g_.cols());
        // The containing square first, then its neighbours by centre distance.
        // A neighbour's surface is extrapolated, which extends the patch by
        // one cell past every hull edge.
        std::array<std::pair<double, std::pair<long, long>>, 9> order{};
        std::size_t n = 0;
        for (long di = -1; di <= 1; ++di) {
            for (long dj = -1; dj <= 1; ++dj) {
                const long i = i0 + di;
                const long j = j0 + dj;
                if (i < 0 || j < 0 || i + 2 > static_cast<long>(g_.rows()) ||
                    j + 2 > static_cast<long>(g_.cols())) {
                    continue;
                }
                const double cu = (u - rv[i]) / du_ - 0.5;
                const double cv2 = (v - cv[j]) / dv_ - 0.5;
                const double d = (di == 0 && dj == 0) ? -1.0 : cu * cu + cv2 * cv2;
                order[n++] = {d, {i, j}};
            }
        }
        std::stable_sort(order.begin(), order.begin() + static_cast<long>(n),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k < n; ++k) {
            const auto [i, j] = order[k].second;
            if (auto h = square_value(static_cast<std::size_t>(i), static_cast<std::size_t>(j), u, v)) {
                return w - *h;
            }
        }
        return std::nullopt;
    }

    // Surface value of square (i, j) at (u, v), extrapolated outside it.
    // Bilinear with four present corners, planar with three, absent otherwise.
    std::optional<double> square_value(std::size_t i, std::size_t j, double u, double v) const {
        const auto& rv = g_.row_values();
        const auto& cv = g_.col_values();
        // corner[ia][ib] is the lattice node (i + ia, j + ib).
        const std::optional<Vec3>* corner[2][2] = {{&g_.cell(i, j), &g_.cell(i, j + 1)},
                                                   {&g_.cell(i + 1, j), &g_.cell(i + 1, j + 1)}};
        int missing = 0;
        int mia = 0, mib = 0;
        for (int ia = 0; ia < 2; ++ia) {
            for (int ib = 0; ib < 2; ++ib) {
                if (!corner[ia][ib]->has_value()) {
                    ++missing;
                    mia = ia;
                    mib = ib;
                }
            }
        }
        if (missing > 1) {
            return std::nullopt;
        }
        const auto val = [&](int ia, int ib) {
            const Vec3& c = **corner[ia][ib];
            return tail_ ? c.x : c.z;
        };
        const double a = (u - rv[i]) / du_;
        const double b = (v - cv[j]) / dv_;
        if (missing == 0) {
            return (1 - a) * (1 - b) * val(0, 0) + (1 - a) * b * val(0, 1) + a * (1 - b) * val(1, 0) +
                   a * b * val(1, 1);
        }
        const int oa = 1 - mia;
        const int ob = 1 - mib;
        const double h0 = val(oa, ob);
        const double ha = val(1 - oa, ob) - h0;
        const double hb = val(oa, 1 - ob) - h0;
        return h0 + ha * (a - oa) / (1 - 2 * oa) + hb * (b - ob) / (1 - 2 * ob);
    }

    // Axis-aligned bounds of the present cells.
    Box3 bounds() const {
        Box3 b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()},
               {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()}};
        for (std::size_t i = 0; i < g_.rows(); ++i) {
            for (std::size_t j = 0; j < g_.cols(); ++j) {
                if (const auto& c = g_.cell(i, j)) {
                    b.min = {std::min(b.min.x, c->x), std::min(b.min.y, c->y), std::min(b.min.z, c->z)};
                    b.max = {std::max(b.max.x, c->x), std::max(b.max.y, c->y), std::max(b.max.z, c->z)};
                }
            }
        }
        return b;
    }

private:
    const SurfaceGrid& g_;
    bool tail_;
    double du_{0.0};
    double dv_{0.0};
};

// Parameter interval where the ray is inside the box, or nullopt.
std::optional<std::pair<double, double>> clip_to_box(const Ray& ray, const Box3& box) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    const double o[3] = {ray.origin.x, ray.origin.y, ray.origin.z};
    const double d[3] = {ray.direction.x, ray.direction.y, ray.direction.z};
    const double lo[3] = {box.min.x, box.min.y, box.min.z};
    const double hi[3] = {box.max.x, box.max.y, box.max.z};
    for (int k = 0; k < 3; ++k) {
        if (d[k] == 0.0) {
            if (o[k] < lo[k] || o[k] > hi[k]) {
                return std::nullopt;
            }
            continue;
        }
        double a = (lo[k] - o[k]) / d[k];
        double b = (hi[k] - o[k]) / d[k];
        if (a > b) {
            std::swap(a, b);
        }
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
    }
    if (!(t0 <= t1)) {
        return std::nullopt;
    }
    return std::make_pair(t0, t1);
}

}  // namespace

std::optional<Vec3> cast_to_surface(const Vec3& origin, const PanTilt& pt, double alpha_deg, const SurfaceGrid& grid) {
    const GridSurface surf(grid);
    if (!surf.usable() || grid.present_count() == 0) {
        return std::nullopt;
    }
    const Ray ray = Ray::make(origin, pantilt_direction(pt, alpha_deg));
    const double step = surf.step() / 2.0;
    Box3 box = surf.bounds();
    const double pad = 2.0 * surf.step();
    box.min = box.min - Vec3{pad, pad, pad};
    box.max = box.max + Vec3{pad, pad, pad};
    const auto span = clip_to_box(ray, box);
    if (!span) {
        return std::nullopt;
    }
    std::optional<double> prev;
    double prev_t = 0.0;
    const auto n = static_cast<std::size_t>(std::ceil((span->second - span->first) / step));
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = std::min(span->first + static_cast<double>(k) * step, span->second);
        const std::optional<double> f = surf.offset(ray.at(t));
        if (f && *f == 0.0) {
            return ray.at(t);
        }
        if (f && prev && (*f > 0.0) != (*prev > 0.0)) {
            double lo = prev_t, hi = t;
            double flo = *prev;
            for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                const std::optional<double> fm = surf.offset(ray.at(mid));
                if (!fm) {
                    break;
                }
                if ((*fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = *fm;
                } else {
                    hi = mid;
                }
            }
            return ray.at(0.5 * (lo + hi));
        }
        prev = f;
        prev_t = t;
    }
    return std::nullopt;
}

ScanPlan plan_for_pose(const std::vector<SimSection>& sections, const CameraPose& estimated, const ScanConfig& cfg,
                       int quadrant) {
    const QuadrantSetup setup{quadrant, yaw_from_quaternion(estimated.orientation).yaw_deg, estimated.position};
    std::vector<SectionInput> inputs;
    inputs.reserve(sections.size());
    for (const SimSection& s : sections) {
        inputs.push_back(SectionInput{grid_to_pantilt(s.grid, setup), s.grid, s.relevance});
    }
    return plan_full(inputs, cfg, quadrant);
}

Summary summarize_values(std::vector<double> values) {
    Summary s;
    s.n = values.size();
    if (values.empty()) {
        return s;
    }
    s.median = median(values);
    s.rmse = rms(values);
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    s.max = *std::max_element(values.begin(), values.end());
    s.min = *std::min_element(values.begin(), values.end());
    return s;
}

SimulationReport execute_plan(const ScanPlan& plan, const CameraPose& true_pose, const CameraPose& estimated_pose,
                              const std::vector<SimSection>& sections, const ScanConfig& cfg, int quadrant) {
    (void)estimated_pose;  // already baked into the plan's commands
    cfg.validate();
    const VirtualPtz ptz(true_pose, quadrant, {{1.0, cfg.hfov_deg, cfg.vfov_deg}});
    const double alpha_true = ptz.alpha_true_deg();
    const QuadrantSetup true_setup{quadrant, yaw_from_quaternion(true_pose.orientation).yaw_deg, true_pose.position};

    SimulationReport report;
    std::vector<double> all_errors;
    std::size_t all_present = 0;
    std::size_t all_covered = 0;

    for (const SectionPlan& sp : plan.sections) {
        const auto it = std::find_if(sections.begin(), sections.end(),
                                     [&](const SimSection& s) { return s.grid.name() == sp.name; });
        if (it == sections.end()) {
            throw Error(ErrorCategory::invalid_argument, "plan refers to unknown section '" + sp.name + "'");
        }
        const SimSection& sec = *it;
        const PanTiltGrid u_true = grid_to_pantilt(sec.grid, true_setup);

        SectionReport sr;
        sr.name = sp.name;
        sr.images = sp.points.size();
        sr.present_cells = u_true.present_count();
        std::vector<char> covered(u_true.rows() * u_true.cols(), 0);
        std::vector<double> errors;
        std::vector<double> overlaps;
        std::vector<char> prev_mask;
        std::size_t prev_size = 0;

        for (std::size_t k = 0; k < sp.points.size(); ++k) {
            const ScanPoint& p = sp.points[k];
            ShotRecord shot;
            shot.section = sp.name;
            shot.seq = k;
            shot.command = PanTilt{p.pan_deg, p.tilt_deg};
            shot.label = p.label;
            shot.hit = sec.cylinder ? cast_to_surface(true_pose.position, shot.command, alpha_true, *sec.cylinder)
                                    : cast_to_surface(true_pose.position, shot.command, alpha_true, sec.grid);
            if (shot.hit) {
                shot.error_m = distance(*shot.hit, p.label);
                errors.push_back(*shot.error_m);
            } else {
                ++sr.missed_shots;
            }

            const auto fp = footprint(u_true, shot.command, cfg);
            shot.footprint_cells = fp.size();
            std::vector<char> mask(covered.size(), 0);
            for (const auto& [i, j] : fp) {
                mask[i * u_true.cols() + j] = 1;
                covered[i * u_true.cols() + j] = 1;
            }
            if (k > 0) {
                const std::size_t smaller = std::min(prev_size, fp.size());
                std::size_t shared = 0;
                for (std::size_t c = 0; c < mask.size(); ++c) {
                    shared += mask[c] && prev_mask[c];
                }
                overlaps.push_back(smaller == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(smaller));
            }
            prev_mask = std::move(mask);
            prev_size = fp.size();
            report.shots.push_back(std::move(shot));
        }

        sr.covered_cells = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
        sr.coverage = sr.present_cells == 0 ? 0.0
                                            : static_cast<double>(sr.covered_cells) / static_cast<double>(sr.present_cells);
        all_errors.insert(all_errors.end(), errors.begin(), errors.end());
        sr.labelling_error = summarize_values(std::move(errors));
        sr.overlap = summarize_values(std::move(overlaps));
        report.images += sr.images;
        report.missed_shots += sr.missed_shots;
        all_present += sr.present_cells;
        all_covered += sr.covered_cells;
        report.sections.push_back(std::move(sr));
    }
    report.coverage = all_present == 0 ? 0.0 : static_cast<double>(all_covered) / static_cast<double>(all_present);
    report.labelling_error = summarize_values(std::move(all_errors));
    return report;
}

MonteCarloReport run_monte_carlo(const std::vector<SimSection>& sections, const CameraPose& true_pose,
                                 const ScanConfig& cfg, int quadrant, double sigma_pos_m, double sigma_yaw_deg,
                                 std::size_t draws, std::uint64_t seed) {
    MonteCarloReport mc;
    mc.sigma_pos_m = sigma_pos_m;
    mc.sigma_yaw_deg = sigma_yaw_deg;
    mc.seed = seed;
    std::vector<double> pooled;
    const double true_yaw = yaw_from_quaternion(true_pose.orientation).yaw_deg;
    for (std::size_t k = 0; k < draws; ++k) {
        const std::uint64_t s = derive_seed(seed, k);
        const PoseEstimate est = noisy_oracle(true_pose, sigma_pos_m, sigma_yaw_deg, s);
        const ScanPlan plan = plan_for_pose(sections, est.pose(), cfg, quadrant);
        const SimulationReport r = execute_plan(plan, true_pose, est.pose(), sections, cfg, quadrant);
        MonteCarloDraw d;
        d.index = k;
        d.seed = s;
        d.position_error_m = distance(est.position, true_pose.position);
        d.yaw_error_deg = wrap_degrees(yaw_from_quaternion(est.orientation).yaw_deg - true_yaw);
        d.images = r.images;
        d.coverage = r.coverage;
        d.labelling_error = r.labelling_error;
        for (const ShotRecord& shot : r.shots) {
            if (shot.error_m) {
                pooled.push_back(*shot.error_m);
            }
        }
        mc.draws.push_back(d);
    }
    mc.pooled_labelling_error = summarize_values(std::move(pooled));
    return mc;
}

namespace {

nlohmann::ordered_json summary_json(const Summary& s) {
    return {{"n", s.n}, {"median", s.median}, {"rmse", s.rmse}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
}

}  // namespace

std::string format_report_json(const SimulationReport& r) {
    nlohmann::ordered_json doc;
    doc["images"] = r.images;
    doc["missed_shots"] = r.missed_shots;
    doc["coverage"] = r.coverage;
    doc["labelling_error_m"] = summary_json(r.labelling_error);
    nlohmann::ordered_json secs = nlohmann::ordered_json::array();
    for (const SectionReport& s : r.sections) {
        secs.push_back({{"name", s.name},
                        {"images", s.images},
                        {"missed_shots", s.missed_shots},
                        {"present_cells", s.present_cells},
                        {"covered_cells", s.covered_cells},
                        {"coverage", s.coverage},
                        {"labelling_error_m", summary_json(s.labelling_error)},
                        {"overlap", summary_json(s.overlap)}});
    }
    doc["sections"] = std::move(secs);
    return doc.dump(2) + "\n";
}

std::string format_shots_csv(const SimulationReport& r) {
    std::string out = "section,seq,pan_deg,tilt_deg,label_x,label_y,label_z,hit_x,hit_y,hit_z,error_m\n";
    for (const ShotRecord& s : r.shots) {
        out += s.section + ',' + std::to_string(s.seq) + ',' + format_double(s.command.pan_deg) + ',' +
               format_double(s.command.tilt_deg) + ',' + format_double(s.label.x) + ',' + format_double(s.label.y) +
               ',' + format_double(s.label.z) + ',';
        if (s.hit) {
            out += format_double(s.hit->x) + ',' + format_double(s.hit->y) + ',' + format_double(s.hit->z) + ',' +
                   format_double(*s.error_m) + '\n';
        } else {
            out += ",,,\n";
        }
    }
    return out;
}

std::string format_monte_carlo_json(const MonteCarloReport& r) {
    nlohmann::ordered_json doc;
    doc["generator"] = Rng::kGeneratorName;
    doc["seed"] = r.seed;
    doc["sigma_pos_m"] = r.sigma_pos_m;
    doc["sigma_yaw_deg"] = r.sigma_yaw_deg;
    doc["pooled_labelling_error_m"] = summary_json(r.pooled_labelling_error);
    nlohmann::ordered_json draws = nlohmann::ordered_json::array();
    for (const MonteCarloDraw& d : r.draws) {
        draws.push_back({{"index", d.index},
                         {"seed", d.seed},
                         {"position_error_m", d.position_error_m},
                         {"yaw_error_deg", d.yaw_error_deg},
                         {"images", d.images},
                         {"coverage", d.coverage},
                         {"labelling_error_m", summary_json(d.labelling_error)}});
    }
    doc["draws"] = std::move(draws);
    return doc.dump(2) + "\n";
}

}  // namespace ptzinspect
