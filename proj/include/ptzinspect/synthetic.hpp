#pragma once

// Analytic point clouds used as fixtures and demo inputs.

#include "ptzinspect/point_cloud.hpp"

namespace ptzinspect {

struct CylinderCloudSpec {
    double h0{2.0};
    double r0{2.0};
    double y_min{0.0};
    double y_max{20.0};
    // Polar angle in the x-z plane measured from +x toward +z; 90 is the top
    // of the fuselage, 180 the side facing the camera.
    double phi_min_deg{0.0};
    double phi_max_deg{180.0};
    double arc_step{0.02};  // m, upper bound on spacing along the arc
    double y_step{0.04};    // m, upper bound on spacing along y
};

// Points on the cylinder surface on a regular (arc, y) lattice that
// includes both ends of each range. Throws invalid_argument for bad ranges.
PointCloud cylinder_cloud(const CylinderCloudSpec& spec);

// Coarse aircraft-like surrogate: upper fuselage (h0 3 m, r0 2 m, 37 m
// long), vertical fin, camera-side wing and horizontal stabiliser. Points
// are tagged fuselage/tail/wing/stabiliser.
PointCloud surrogate_aircraft_cloud(double step = 0.04);

}  // namespace ptzinspect
