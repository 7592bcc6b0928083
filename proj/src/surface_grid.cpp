#include "ptzinspect/surface_grid.hpp"

#include <cmath>
#include <json.hpp>

#include "ptzinspect/delaunay.hpp"
#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

std::string_view kind_name(SectionKind k) noexcept {
    switch (k) {
        case SectionKind::fuselage: return "fuselage";
        case SectionKind::tail: return "tail";
        case SectionKind::wing: return "wing";
        case SectionKind::stabiliser: return "stabiliser";
    }
    return "unknown";
}

std::string_view axis_name(InterpolationAxis a) noexcept {
    return a == InterpolationAxis::z_over_xy ? "z-over-xy" : "x-over-zy";
}

std::string_view relevance_name(HalfRelevance r) noexcept {
    return r == HalfRelevance::back_half ? "back-half" : "front-half";
}

SectionKind parse_kind(std::string_view s) {
    for (SectionKind k : {SectionKind::fuselage, SectionKind::tail, SectionKind::wing, SectionKind::stabiliser}) {
        if (s == kind_name(k)) {
            return k;
        }
    }
    throw Error(ErrorCategory::invalid_argument, "unknown section kind '" + std::string(s) + "'");
}

HalfRelevance parse_relevance(std::string_view s) {
    if (s == "back-half") {
        return HalfRelevance::back_half;
    }
    if (s == "front-half") {
        return HalfRelevance::front_half;
    }
    throw Error(ErrorCategory::invalid_argument, "unknown relevance '" + std::string(s) + "'");
}

InterpolationAxis axis_for(SectionKind k) noexcept {
    return k == SectionKind::tail ? InterpolationAxis::x_over_zy : InterpolationAxis::z_over_xy;
}

namespace {

Vec3 vec_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) {
        throw Error(ErrorCategory::invalid_argument, what + " must be an array of three numbers");
    }
    Vec3 v{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    if (!is_finite(v)) {
        throw Error(ErrorCategory::invalid_argument, what + " must be finite");
    }
    return v;
}

}  // namespace

std::vector<SectionSpec> parse_sections(std::string_view json_text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, 0, e.what());
    }
    std::vector<SectionSpec> out;
    try {
        const auto& list = doc.at("sections");
        if (!list.is_array() || list.empty()) {
            throw Error(ErrorCategory::invalid_argument, "'sections' must be a non-empty array");
        }
        for (const auto& s : list) {
            SectionSpec spec;
            spec.name = s.at("name").get<std::string>();
            spec.kind = parse_kind(s.at("kind").get<std::string>());
            spec.box = Box3{vec_from_json(s.at("min"), spec.name + ".min"), vec_from_json(s.at("max"), spec.name + ".max")};
            if (!spec.box.valid()) {
                throw Error(ErrorCategory::invalid_argument, "section '" + spec.name + "' has min >= max on some axis");
            }
            spec.axis = axis_for(spec.kind);
            if (s.contains("axis") && s.at("axis").get<std::string>() != axis_name(spec.axis)) {
                throw Error(ErrorCategory::invalid_argument,
                            "section '" + spec.name + "': kind " + std::string(kind_name(spec.kind)) + " requires axis " +
                                std::string(axis_name(spec.axis)));
            }
            spec.relevance = parse_relevance(s.at("relevance").get<std::string>());
            out.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source, 0, e.what());
    }
    return out;
}

std::vector<SectionSpec> load_sections(const std::filesystem::path& path) {
    return parse_sections(read_text_file(path), path.string());
}

SectionSelection section_points(const PointCloud& cloud, const SectionSpec& spec) {
    if (!spec.box.valid()) {
        throw Error(ErrorCategory::invalid_argument, "section '" + spec.name + "' has an invalid box");
    }
    SectionSelection sel;
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        if (spec.box.contains(cloud.points[k])) {
            sel.cloud.points.push_back(cloud.points[k]);
            if (cloud.has_tags()) {
                sel.cloud.tags.push_back(cloud.tags[k]);
            }
        }
    }
    sel.empty = sel.cloud.empty();
    return sel;
}

SurfaceGrid::SurfaceGrid(std::string name, SectionKind kind, InterpolationAxis axis, std::vector<double> row_values,
                         std::vector<double> col_values, std::vector<std::optional<Vec3>> cells)
    : name_(std::move(name)),
      kind_(kind),
      axis_(axis),
      row_values_(std::move(row_values)),
      col_values_(std::move(col_values)),
      cells_(std::move(cells)) {
    if (cells_.size() != row_values_.size() * col_values_.size()) {
        throw Error(ErrorCategory::invalid_argument, "surface grid cell count does not match rows x cols");
    }
    const auto ascending = [](const std::vector<double>& v) {
        for (std::size_t k = 1; k < v.size(); ++k) {
            if (!(v[k] > v[k - 1])) {
                return false;
            }
        }
        return true;
    };
    if (!ascending(row_values_) || !ascending(col_values_)) {
        throw Error(ErrorCategory::invalid_argument, "surface grid coordinates must be strictly ascending");
    }
    for (std::size_t i = 0; i < rows(); ++i) {
        for (std::size_t j = 0; j < cols(); ++j) {
            const auto& c = cells_[i * cols() + j];
            if (!c) {
                continue;
            }
            const double row_coord = axis_ == InterpolationAxis::z_over_xy ? c->x : c->z;
            if (row_coord != row_values_[i] || c->y != col_values_[j]) {
                throw Error(ErrorCategory::invalid_argument, "surface grid cell disagrees with its lattice coordinates");
            }
        }
    }
}

const std::optional<Vec3>& SurfaceGrid::cell(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols()) {
        throw Error(ErrorCategory::invalid_argument, "grid index (" + std::to_string(i) + ", " + std::to_string(j) +
                                                         ") out of range");
    }
    return cells_[i * cols() + j];
}

std::size_t SurfaceGrid::present_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : cells_) {
        n += c.has_value();
    }
    return n;
}

std::vector<double> lattice(double min, double max, double step) {
    if (!(step > 0.0) || !(max >= min)) {
        throw Error(ErrorCategory::invalid_argument, "lattice needs step > 0 and max >= min");
    }
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) {
        v[k] = min + static_cast<double>(k) * step;
    }
    return v;
}

SurfaceGrid interpolate_section(const PointCloud& sub, const SectionSpec& spec, double resolution) {
    const bool tail = spec.axis == InterpolationAxis::x_over_zy;
    std::vector<Point2> sites;
    std::vector<double> values;
    sites.reserve(sub.size());
    values.reserve(sub.size());
    for (const Vec3& p : sub.points) {
        sites.push_back(tail ? Point2{p.z, p.y} : Point2{p.x, p.y});
        values.push_back(tail ? p.x : p.z);
    }
    if (sites.size() < 3) {
        throw Error(ErrorCategory::invalid_argument,
                    "section '" + spec.name + "' needs at least three points to interpolate");
    }
    const LinearInterpolator interp(sites, values);

    double umin = sites[0].x, umax = sites[0].x, vmin = sites[0].y, vmax = sites[0].y;
    for (const Point2& s : sites) {
        umin = std::min(umin, s.x);
        umax = std::max(umax, s.x);
        vmin = std::min(vmin, s.y);
        vmax = std::max(vmax, s.y);
    }
    std::vector<double> rows = lattice(umin, umax, resolution);
    std::vector<double> cols = lattice(vmin, vmax, resolution);

    std::vector<std::optional<Vec3>> cells(rows.size() * cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::optional<double> w = interp(rows[i], cols[j]);
            if (w) {
                cells[i * cols.size() + j] = tail ? Vec3{*w, cols[j], rows[i]} : Vec3{rows[i], cols[j], *w};
            }
        }
    }
    return SurfaceGrid(spec.name, spec.kind, spec.axis, std::move(rows), std::move(cols), std::move(cells));
}

std::optional<Vec3> grid_cell(const SurfaceGrid& grid, std::size_t i, std::size_t j) {
    return grid.cell(i, j);
}

std::string format_grid_csv(const SurfaceGrid& grid) {
    std::string out = "i,j,x,y,z,valid\n";
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const auto& c = grid.cell(i, j);
            out += std::to_string(i) + ',' + std::to_string(j) + ',';
            if (c) {
                out += format_double(c->x) + ',' + format_double(c->y) + ',' + format_double(c->z) + ",1\n";
            } else {
                out += ",,,0\n";
            }
        }
    }
    return out;
}

}  // namespace ptzinspect
