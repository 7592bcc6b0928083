#include "ptzinspect/synthetic.hpp"

#include <cmath>
#include <functional>

namespace ptzinspect {

namespace {

std::size_t intervals(double extent, double step) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(extent / step - 1e-9)));
}

// Samples f(a, b) over [a0, a1] x [b0(a), b1(a)].
void sample_patch(PointCloud& cloud, const std::string& tag, double a0, double a1,
                  const std::function<double(double)>& b0, const std::function<double(double)>& b1,
                  const std::function<Vec3(double, double)>& f, double step) {
    const std::size_t na = intervals(a1 - a0, step);
    for (std::size_t i = 0; i <= na; ++i) {
        const double a = a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(na);
        const double lo = b0(a);
        const double hi = b1(a);
        const std::size_t nb = intervals(hi - lo, step);
        for (std::size_t j = 0; j <= nb; ++j) {
            cloud.points.push_back(f(a, lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(nb)));
            cloud.tags.push_back(tag);
        }
    }
}

}  // namespace

PointCloud cylinder_cloud(const CylinderCloudSpec& s) {
    if (!(s.r0 > 0.0) || !(s.y_max > s.y_min) || !(s.phi_max_deg > s.phi_min_deg) || !(s.arc_step > 0.0) ||
        !(s.y_step > 0.0)) {
        throw Error(ErrorCategory::invalid_argument, "invalid cylinder cloud parameters");
    }
    const double phi0 = deg_to_rad(s.phi_min_deg);
    const double phi1 = deg_to_rad(s.phi_max_deg);
    const std::size_t na = intervals(s.r0 * (phi1 - phi0), s.arc_step);
    const std::size_t ny = intervals(s.y_max - s.y_min, s.y_step);
    PointCloud cloud;
    cloud.points.reserve((na + 1) * (ny + 1));
    for (std::size_t a = 0; a <= na; ++a) {
        const double phi = phi0 + (phi1 - phi0) * static_cast<double>(a) / static_cast<double>(na);
        const double x = s.r0 * std::cos(phi);
        const double z = s.h0 + s.r0 * std::sin(phi);
        for (std::size_t k = 0; k <= ny; ++k) {
            const double y = s.y_min + (s.y_max - s.y_min) * static_cast<double>(k) / static_cast<double>(ny);
            cloud.points.push_back({x, y, z});
        }
    }
    return cloud;
}

PointCloud surrogate_aircraft_cloud(double step) {
    if (!(step > 0.0)) {
        throw Error(ErrorCategory::invalid_argument, "sampling step must be positive");
    }
    PointCloud cloud;
    CylinderCloudSpec fus;
    fus.h0 = 3.0;
    fus.r0 = 2.0;
    fus.y_min = 0.0;
    fus.y_max = 37.0;
    fus.arc_step = step;
    fus.y_step = step;
    cloud = cylinder_cloud(fus);
    cloud.tags.assign(cloud.size(), "fuselage");

    const auto constant = [](double v) { return [v](double) { return v; }; };

    // Vertical fin: swept leading edge, slightly tapered camera-side face.
    sample_patch(
        cloud, "tail", 5.3, 11.0, [](double z) { return 29.0 + 0.6 * (z - 5.3); }, constant(36.0),
        [](double z, double y) { return Vec3{-0.2 * (1.0 - (z - 5.3) / 12.0), y, z}; }, step);

    // Camera-side wing upper surface with sweep and dihedral.
    sample_patch(
        cloud, "wing", -17.0, -2.1, [](double x) { return 12.0 + 0.45 * (-x - 2.1); },
        [](double x) { return 17.5 + 0.35 * (-x - 2.1); },
        [](double x, double y) { return Vec3{x, y, 2.0 + 0.06 * (-x - 2.1)}; }, step);

    // Camera-side horizontal stabiliser.
    sample_patch(
        cloud, "stabiliser", -6.5, -1.6, [](double x) { return 32.0 + 0.3 * (-x - 1.6); }, constant(35.8),
        [](double x, double y) { return Vec3{x, y, 5.4 + 0.05 * (-x - 1.6)}; }, step);
    return cloud;
}

}  // namespace ptzinspect
