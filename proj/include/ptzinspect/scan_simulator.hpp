#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/pantilt.hpp"
#include "ptzinspect/scan_planner.hpp"
#include "ptzinspect/surface_grid.hpp"

namespace ptzinspect {

struct ZoomLevel {
    double zoom{1.0};
    double hfov_deg{60.0};
    double vfov_deg{33.75};
};

// 1x wide view and the 13x scan zoom.
std::vector<ZoomLevel> default_zoom_table();

/// Simulated PTZ head at a known (true) pose.
class VirtualPtz {
public:
    // Throws invalid_argument unless zooms strictly increase and both FOVs
    // are positive and non-increasing along the table.
    VirtualPtz(CameraPose true_pose, int quadrant, std::vector<ZoomLevel> zoom_table = default_zoom_table());

    const CameraPose& pose() const noexcept { return pose_; }
    int quadrant() const noexcept { return quadrant_; }

    // Yaw of the true base relative to the quadrant's initialisation pan.
    double alpha_true_deg() const;

    // Throws invalid_argument for a zoom not in the table.
    void set_zoom(double zoom);
    const ZoomLevel& zoom() const noexcept { return zoom_table_[zoom_index_]; }

    void point(const PanTilt& pt) noexcept { current_ = pt; }
    const PanTilt& current() const noexcept { return current_; }

    Ray optical_ray() const;

private:
    CameraPose pose_;
    int quadrant_;
    std::vector<ZoomLevel> zoom_table_;
    std::size_t zoom_index_{0};
    PanTilt current_{};
};

// Cells of U whose pan (wrapped) and tilt lie within half the FOV of the
// shot, bounds included, in row-major order.
std::vector<std::pair<std::size_t, std::size_t>> footprint(const PanTiltGrid& u_true, const PanTilt& shot,
                                                           const ScanConfig& cfg);

// Surface point seen along (pan + alpha, tilt) from `origin`.
std::optional<Vec3> cast_to_surface(const Vec3& origin, const PanTilt& pt, double alpha_deg, const CylinderModel& cyl);

// Grid target: the surface is the bilinear interpolant of each lattice
// square whose four corners are present, or the plane through the present
// corners of a square that lacks one. Where the containing square has
// neither, the nearest usable neighbouring square is extrapolated, so the
// surface reaches one cell past the data. The ray is marched in steps of
// half the lattice spacing and the first sign change is refined by
// bisection. Returns nullopt on a miss.
std::optional<Vec3> cast_to_surface(const Vec3& origin, const PanTilt& pt, double alpha_deg, const SurfaceGrid& grid);

struct SimSection {
    SurfaceGrid grid;
    HalfRelevance relevance{HalfRelevance::back_half};
    // When set, shots are cast onto this analytic surface instead of the grid.
    std::optional<CylinderModel> cylinder;
};

// Converts every section under `estimated` and plans it.
ScanPlan plan_for_pose(const std::vector<SimSection>& sections, const CameraPose& estimated, const ScanConfig& cfg,
                       int quadrant);

struct ShotRecord {
    std::string section;
    std::size_t seq{0};
    PanTilt command;
    Vec3 label;
    std::optional<Vec3> hit;       // absent when the shot missed the surface
    std::optional<double> error_m;
    std::size_t footprint_cells{0};
};

struct Summary {
    std::size_t n{0};
    double median{0.0};
    double rmse{0.0};
    double max{0.0};
    double mean{0.0};
    double min{0.0};
};

// All zeros for an empty set.
Summary summarize_values(std::vector<double> values);

struct SectionReport {
    std::string name;
    std::size_t images{0};
    std::size_t missed_shots{0};
    std::size_t present_cells{0};
    std::size_t covered_cells{0};
    double coverage{0.0};
    Summary labelling_error;  // metres
    Summary overlap;          // shared cells / smaller footprint, per consecutive pair
};

struct SimulationReport {
    std::vector<SectionReport> sections;
    std::vector<ShotRecord> shots;
    std::size_t images{0};
    std::size_t missed_shots{0};
    double coverage{0.0};  // over all sections' present cells
    Summary labelling_error;
};

// Executes the plan (commanded under the estimated pose) from the true pose.
// Plan sections are matched to `sections` by grid name; an unknown name
// throws invalid_argument.
SimulationReport execute_plan(const ScanPlan& plan, const CameraPose& true_pose, const CameraPose& estimated_pose,
                              const std::vector<SimSection>& sections, const ScanConfig& cfg, int quadrant);

struct MonteCarloDraw {
    std::size_t index{0};
    std::uint64_t seed{0};
    double position_error_m{0.0};
    double yaw_error_deg{0.0};
    std::size_t images{0};
    double coverage{0.0};
    Summary labelling_error;
};

struct MonteCarloReport {
    double sigma_pos_m{0.0};
    double sigma_yaw_deg{0.0};
    std::uint64_t seed{0};
    std::vector<MonteCarloDraw> draws;
    Summary pooled_labelling_error;  // every labelled shot of every draw
};

// Draw k uses noisy_oracle(true_pose, ..., derive_seed(seed, k)), plans under
// that estimate and executes from the true pose.
MonteCarloReport run_monte_carlo(const std::vector<SimSection>& sections, const CameraPose& true_pose,
                                 const ScanConfig& cfg, int quadrant, double sigma_pos_m, double sigma_yaw_deg,
                                 std::size_t draws, std::uint64_t seed);

std::string format_report_json(const SimulationReport& report);
// Header "section,seq,pan_deg,tilt_deg,label_x,label_y,label_z,hit_x,hit_y,hit_z,error_m".
std::string format_shots_csv(const SimulationReport& report);
std::string format_monte_carlo_json(const MonteCarloReport& report);

}  // namespace ptzinspect
