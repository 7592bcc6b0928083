#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ptzinspect/predicates.hpp"

namespace ptzinspect {

using predicates::Point2;

/// 2D Delaunay triangulation built incrementally (Bowyer-Watson with ghost
/// triangles for the hull) on exact predicates.
///
/// Sites are inserted in lexicographic (x, then y) order and a point only
/// displaces triangles whose circumcircle strictly contains it, so
/// co-circular configurations resolve the same way on every run. Duplicate
/// sites collapse onto their first occurrence in input order.
class DelaunayTriangulation {
public:
    // Throws invalid_argument when there are fewer than three distinct sites
    // or all sites are collinear.
    explicit DelaunayTriangulation(std::span<const Point2> sites);

    // Distinct sites, lexicographically sorted.
    const std::vector<Point2>& vertices() const noexcept { return vertices_; }

    // For each distinct vertex, the input index it was taken from.
    const std::vector<std::size_t>& source_index() const noexcept { return source_index_; }

    // Counter-clockwise vertex triples, indices into vertices().
    const std::vector<std::array<std::size_t, 3>>& triangles() const noexcept { return triangles_; }

private:
    std::vector<Point2> vertices_;
    std::vector<std::size_t> source_index_;
    std::vector<std::array<std::size_t, 3>> triangles_;
};

/// Piecewise-linear interpolation of scattered samples over their Delaunay
/// triangulation. Queries outside the convex hull of the sites return nullopt.
class LinearInterpolator {
public:
    LinearInterpolator(std::span<const Point2> sites, std::span<const double> values);

    std::optional<double> operator()(double u, double v) const;

    const DelaunayTriangulation& triangulation() const noexcept { return tri_; }

private:
    std::size_t bucket_of(double u, double v) const noexcept;

    DelaunayTriangulation tri_;
    std::vector<double> vertex_values_;

    double min_u_{0.0}, min_v_{0.0}, max_u_{0.0}, max_v_{0.0};
    double bucket_du_{1.0}, bucket_dv_{1.0};
    std::size_t buckets_u_{1}, buckets_v_{1};
    std::vector<std::size_t> bucket_start_;
    std::vector<std::size_t> bucket_items_;
};

}  // namespace ptzinspect
