#include "ptzinspect/pantilt.hpp"

#include <cmath>
#include <sstream>

#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

double quadrant_beta(int quadrant) {
    if (quadrant < 1 || quadrant > 4) {
        throw Error(ErrorCategory::invalid_argument, "quadrant must be 1..4, got " + std::to_string(quadrant));
    }
    return kQuadrantBeta[static_cast<std::size_t>(quadrant - 1)];
}

HalfRelevance quadrant_half(int quadrant) {
    quadrant_beta(quadrant);
    return (quadrant == 2 || quadrant == 3) ? HalfRelevance::back_half : HalfRelevance::front_half;
}

AlphaResult compute_alpha(const QuadrantSetup& setup) {
    AlphaResult r;
    r.alpha_deg = setup.yaw_deg - quadrant_beta(setup.quadrant);
    if (std::abs(r.alpha_deg) > kAlphaWarnDeg) {
        std::ostringstream msg;
        msg << "alpha = " << r.alpha_deg << " deg exceeds the +-" << kAlphaWarnDeg
            << " deg yaw window of quadrant " << setup.quadrant;
        r.warning = msg.str();
    }
    return r;
}

PanTilt point_to_pantilt(const Vec3& point, const Vec3& camera_position, double alpha_deg) {
    const Vec3 d = point - camera_position;
    if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) {
        throw Error(ErrorCategory::invalid_argument, "point coincides with the camera position");
    }
    const double pan = rad_to_deg(std::atan2(d.y, d.x)) - alpha_deg;
    const double tilt = rad_to_deg(std::atan2(d.z, std::hypot(d.x, d.y)));
    return PanTilt{wrap_degrees(pan), tilt};
}

Vec3 pantilt_direction(const PanTilt& pt, double alpha_deg) noexcept {
    const double az = deg_to_rad(pt.pan_deg + alpha_deg);
    const double el = deg_to_rad(pt.tilt_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

PanTiltGrid::PanTiltGrid(std::size_t rows, std::size_t cols, std::vector<std::optional<PanTilt>> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (cells_.size() != rows_ * cols_) {
        throw Error(ErrorCategory::invalid_argument, "pan-tilt grid cell count does not match rows x cols");
    }
}

const std::optional<PanTilt>& PanTiltGrid::cell(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw Error(ErrorCategory::invalid_argument, "pan-tilt index (" + std::to_string(i) + ", " + std::to_string(j) +
                                                         ") out of range");
    }
    return cells_[i * cols_ + j];
}

std::size_t PanTiltGrid::present_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : cells_) {
        n += c.has_value();
    }
    return n;
}

PanTiltGrid grid_to_pantilt(const SurfaceGrid& grid, const QuadrantSetup& setup) {
    const double alpha = compute_alpha(setup).alpha_deg;
    std::vector<std::optional<PanTilt>> cells(grid.rows() * grid.cols());
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            if (const auto& p = grid.cell(i, j)) {
                cells[i * grid.cols() + j] = point_to_pantilt(*p, setup.camera_position, alpha);
            }
        }
    }
    return PanTiltGrid(grid.rows(), grid.cols(), std::move(cells));
}

std::string format_pantilt_csv(const PanTiltGrid& u) {
    std::string out = "i,j,pan_deg,tilt_deg,valid\n";
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            out += std::to_string(i) + ',' + std::to_string(j) + ',';
            if (const auto& c = u.cell(i, j)) {
                out += format_double(c->pan_deg) + ',' + format_double(c->tilt_deg) + ",1\n";
            } else {
                out += ",,0\n";
            }
        }
    }
    return out;
}

}  // namespace ptzinspect
