#pragma once

// Robust 2D orientation and in-circle tests. A floating-point filter
// answers the easy cases; anything within the filter's error bound is
// re-evaluated exactly with floating-point expansion arithmetic, so the
// returned sign is always the sign of the exact determinant.

namespace ptzinspect::predicates {

struct Point2 {
    double x{0.0};
    double y{0.0};
};

// > 0 if a, b, c are counter-clockwise, < 0 if clockwise, 0 if collinear.
// The magnitude is only meaningful when the filter succeeded.
double orient2d(Point2 a, Point2 b, Point2 c) noexcept;

// > 0 if d lies strictly inside the circle through counter-clockwise a, b, c.
double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept;

// Exact-only variants, exposed for testing the filter.
double orient2d_exact(Point2 a, Point2 b, Point2 c) noexcept;
double incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d) noexcept;

}  // namespace ptzinspect::predicates
