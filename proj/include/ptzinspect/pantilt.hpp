#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/surface_grid.hpp"

namespace ptzinspect {

struct PanTilt {
    double pan_deg{0.0};   // (-180, 180]
    double tilt_deg{0.0};  // [-90, 90]
};

// Initialisation pan of each deployment quadrant, degrees.
inline constexpr std::array<double, 4> kQuadrantBeta{10.0, -20.0, 20.0, -10.0};

// Throws invalid_argument unless quadrant is 1..4.
double quadrant_beta(int quadrant);

// Quadrants 2 and 3 sit behind the wing, 1 and 4 in front of it.
HalfRelevance quadrant_half(int quadrant);

struct QuadrantSetup {
    int quadrant{3};
    double yaw_deg{0.0};  // estimated camera yaw gamma
    Vec3 camera_position;
};

inline constexpr double kAlphaWarnDeg = 10.0;

struct AlphaResult {
    double alpha_deg{0.0};
    std::optional<std::string> warning;  // set when |alpha| exceeds 10 deg
};

// alpha = gamma - beta_q.
AlphaResult compute_alpha(const QuadrantSetup& setup);

// pan = atan2(y_c, x_c) - alpha, tilt = atan2(z_c, hypot(x_c, y_c)), with
// (x_c, y_c, z_c) = point - camera. Throws invalid_argument when the point
// coincides with the camera.
PanTilt point_to_pantilt(const Vec3& point, const Vec3& camera_position, double alpha_deg);

// Unit direction of the optical axis commanded to (pan, tilt) under alpha.
Vec3 pantilt_direction(const PanTilt& pt, double alpha_deg) noexcept;

/// Pan-tilt array index-aligned with a SurfaceGrid.
class PanTiltGrid {
public:
    PanTiltGrid() = default;
    PanTiltGrid(std::size_t rows, std::size_t cols, std::vector<std::optional<PanTilt>> cells);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::optional<PanTilt>& cell(std::size_t i, std::size_t j) const;
    std::size_t present_count() const noexcept;

private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<std::optional<PanTilt>> cells_;
};

PanTiltGrid grid_to_pantilt(const SurfaceGrid& grid, const QuadrantSetup& setup);

// Header "i,j,pan_deg,tilt_deg,valid".
std::string format_pantilt_csv(const PanTiltGrid& u);

}  // namespace ptzinspect
