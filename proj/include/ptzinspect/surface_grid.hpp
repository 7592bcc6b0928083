#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/point_cloud.hpp"

namespace ptzinspect {

inline constexpr double kGridResolution = 0.05;  // metres

enum class SectionKind { fuselage, tail, wing, stabiliser };

// Which coordinate is interpolated over which pair. Rows run along the first
// coordinate of the pair, columns along y.
enum class InterpolationAxis {
    z_over_xy,  // rows x, columns y, value z
    x_over_zy,  // rows z, columns y, value x (vertical tail)
};

enum class HalfRelevance { back_half, front_half };

std::string_view kind_name(SectionKind k) noexcept;
std::string_view axis_name(InterpolationAxis a) noexcept;
std::string_view relevance_name(HalfRelevance r) noexcept;
SectionKind parse_kind(std::string_view s);
HalfRelevance parse_relevance(std::string_view s);

// Tail sections interpolate x over (z, y); every other kind z over (x, y).
InterpolationAxis axis_for(SectionKind k) noexcept;

struct Box3 {
    Vec3 min;
    Vec3 max;

    bool valid() const noexcept { return min.x < max.x && min.y < max.y && min.z < max.z; }
    bool contains(const Vec3& p) const noexcept {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
    }
};

struct SectionSpec {
    std::string name;
    SectionKind kind{SectionKind::fuselage};
    Box3 box;
    InterpolationAxis axis{InterpolationAxis::z_over_xy};
    HalfRelevance relevance{HalfRelevance::back_half};
};

// JSON section configuration:
//   {"sections": [{"name": "...", "kind": "fuselage|tail|wing|stabiliser",
//                  "min": [x, y, z], "max": [x, y, z],
//                  "relevance": "back-half|front-half"}, ...]}
// An optional "axis" entry must agree with the kind. Throws ParseError.
std::vector<SectionSpec> parse_sections(std::string_view json_text, const std::string& source);
std::vector<SectionSpec> load_sections(const std::filesystem::path& path);

struct SectionSelection {
    PointCloud cloud;
    bool empty{true};  // true when no point fell inside the box
};

// Points inside the closed box, in input order. Throws invalid_argument for
// a box with min >= max on some axis.
SectionSelection section_points(const PointCloud& cloud, const SectionSpec& spec);

/// Rows x columns of optional surface points on a uniform lattice.
class SurfaceGrid {
public:
    SurfaceGrid() = default;

    // Throws invalid_argument when the cell count does not match, the
    // coordinates are not strictly ascending, or a present cell disagrees
    // with its row/column coordinate.
    SurfaceGrid(std::string name, SectionKind kind, InterpolationAxis axis, std::vector<double> row_values,
                std::vector<double> col_values, std::vector<std::optional<Vec3>> cells);

    const std::string& name() const noexcept { return name_; }
    SectionKind kind() const noexcept { return kind_; }
    InterpolationAxis axis() const noexcept { return axis_; }
    std::size_t rows() const noexcept { return row_values_.size(); }
    std::size_t cols() const noexcept { return col_values_.size(); }
    const std::vector<double>& row_values() const noexcept { return row_values_; }
    const std::vector<double>& col_values() const noexcept { return col_values_; }

    // Throws invalid_argument for out-of-range indices.
    const std::optional<Vec3>& cell(std::size_t i, std::size_t j) const;

    std::size_t present_count() const noexcept;

private:
    std::string name_;
    SectionKind kind_{SectionKind::fuselage};
    InterpolationAxis axis_{InterpolationAxis::z_over_xy};
    std::vector<double> row_values_;
    std::vector<double> col_values_;
    std::vector<std::optional<Vec3>> cells_;
};

// Lattice coordinates min + k*step for k = 0 .. floor((max-min)/step + 1e-9).
std::vector<double> lattice(double min, double max, double step);

// Piecewise-linear interpolation over the Delaunay triangulation of the
// projected points, sampled on the lattice spanning their bounding
// rectangle. Cells outside the convex hull are absent. Throws
// invalid_argument for fewer than three distinct or collinear projections.
SurfaceGrid interpolate_section(const PointCloud& sub, const SectionSpec& spec,
                                double resolution = kGridResolution);

std::optional<Vec3> grid_cell(const SurfaceGrid& grid, std::size_t i, std::size_t j);

// Header "i,j,x,y,z,valid"; absent cells have empty coordinates and valid 0.
std::string format_grid_csv(const SurfaceGrid& grid);

}  // namespace ptzinspect
