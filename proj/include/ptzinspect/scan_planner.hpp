#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ptzinspect/pantilt.hpp"
#include "ptzinspect/surface_grid.hpp"

namespace ptzinspect {

struct ScanConfig {
    double hfov_deg{6.15};
    double vfov_deg{3.46};
    double mu{0.15};  // overlap factor, [0, 1)

    double lambda() const noexcept { return 1.0 - mu; }

    // Throws invalid_argument unless both FOVs are positive and mu is in [0, 1).
    void validate() const;
};

struct ScanPoint {
    double pan_deg{0.0};
    double tilt_deg{0.0};
    Vec3 label;
    std::string section;
    std::size_t i{0};
    std::size_t j{0};
};

// Selects scan points from U in raster order. Rows are admitted on the tilt
// medians against lambda*VFOV, columns on the pans against lambda*HFOV; wing
// and stabiliser sections swap pan with tilt and HFOV with VFOV. A candidate
// is taken when its gap to the last selection is >= lambda*FOV, or when it
// is the last present row/column and the gap exceeds FOV/2. The first
// present row and column count as a gap of exactly lambda*FOV. Absent cells
// are skipped; medians use present cells only.
std::vector<ScanPoint> select_scan_points(const PanTiltGrid& u, SectionKind kind, const ScanConfig& cfg);

// Copies grid(i, j) into each point's label and the grid name into its
// section. An index that is out of range or names an absent cell throws
// Error(internal_consistency).
void attach_labels(std::vector<ScanPoint>& points, const SurfaceGrid& grid);

// select_scan_points followed by attach_labels. Throws invalid_argument when
// U and the grid have different shapes.
std::vector<ScanPoint> plan_section(const PanTiltGrid& u, const SurfaceGrid& grid, const ScanConfig& cfg);

struct SectionPlan {
    std::string name;
    SectionKind kind{SectionKind::fuselage};
    std::vector<ScanPoint> points;
};

struct ScanPlan {
    ScanConfig config;
    int quadrant{3};
    std::vector<SectionPlan> sections;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept;
};

struct SectionInput {
    PanTiltGrid u;
    SurfaceGrid grid;
    HalfRelevance relevance{HalfRelevance::back_half};
};

// Plans every section and orders them fuselage, tail, stabiliser, wing
// (input order within a kind). Sections meant for the other half of the
// aircraft are still planned but add a warning.
ScanPlan plan_full(const std::vector<SectionInput>& sections, const ScanConfig& cfg, int quadrant);

std::string format_plan_json(const ScanPlan& plan);
// Header "section,seq,i,j,pan_deg,tilt_deg,x,y,z".
std::string format_plan_csv(const ScanPlan& plan);
ScanPlan parse_plan_json(std::string_view text, const std::string& source);
ScanPlan load_plan(const std::filesystem::path& path);

}  // namespace ptzinspect
