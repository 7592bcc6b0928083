#pragma once

// Scene-frame geometry shared by every module. The frame and angle
// conventions are normative and written up in docs/conventions.md:
//   x  lateral, pointing from the camera side toward the fuselage axis
//   y  along the fuselage (tail toward +y)
//   z  up, origin on the ground below the fuselage axis
// Angles are radians inside the library and degrees at every external
// interface (files, CLI, the *_deg helpers below).

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

#include "ptzinspect/error.hpp"

namespace ptzinspect {

inline constexpr double deg_to_rad(double deg) noexcept { return deg * (std::numbers::pi / 180.0); }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / std::numbers::pi); }

// Wraps an angle in degrees into (-180, 180].
double wrap_degrees(double deg) noexcept;

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3 operator+(const Vec3& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const noexcept { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const noexcept { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) noexcept {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    constexpr bool operator==(const Vec3&) const noexcept = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) noexcept { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) noexcept { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) noexcept { return norm(a - b); }
inline bool is_finite(const Vec3& v) noexcept {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Throws invalid_argument for zero-length or non-finite input.
Vec3 normalized(const Vec3& v);

// Default optical axis of the camera: +x, i.e. from the camera region toward
// the fuselage when the camera faces the aircraft perpendicularly.
inline constexpr Vec3 kForward{1.0, 0.0, 0.0};

// Intersections closer than this along a view ray count as behind the camera.
inline constexpr double kMinRayParameter = 1e-6;

/// Rotation stored as a normalized quaternion w + xi + yj + zk.
///
/// Every constructor normalizes, so |q| is 1 to within rounding. q and -q
/// describe the same rotation; nothing here canonicalizes the sign.
class UnitQuaternion {
public:
    constexpr UnitQuaternion() noexcept = default;

    // Normalizes (w, x, y, z). Zero-norm or non-finite input throws invalid_argument.
    static UnitQuaternion from_components(double w, double x, double y, double z);

    static UnitQuaternion from_axis_angle(const Vec3& axis, double angle_rad);

    // Intrinsic z-y'-x'' (yaw, then pitch about the new y, then roll about the new x).
    static UnitQuaternion from_yaw_pitch_roll(double yaw_rad, double pitch_rad, double roll_rad);

    constexpr double w() const noexcept { return w_; }
    constexpr double x() const noexcept { return x_; }
    constexpr double y() const noexcept { return y_; }
    constexpr double z() const noexcept { return z_; }

    UnitQuaternion conjugate() const noexcept { return raw(w_, -x_, -y_, -z_); }
    UnitQuaternion negated() const noexcept { return raw(-w_, -x_, -y_, -z_); }

    // Hamilton product, renormalized.
    UnitQuaternion operator*(const UnitQuaternion& o) const;

private:
    static constexpr UnitQuaternion raw(double w, double x, double y, double z) noexcept {
        UnitQuaternion q;
        q.w_ = w;
        q.x_ = x;
        q.y_ = y;
        q.z_ = z;
        return q;
    }

    double w_{1.0};
    double x_{0.0};
    double y_{0.0};
    double z_{0.0};
};

constexpr double dot(const UnitQuaternion& a, const UnitQuaternion& b) noexcept {
    return a.w() * b.w() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

// Rotates v by q. Norm-preserving.
Vec3 rotate_vector(const UnitQuaternion& q, const Vec3& v);

struct CameraPose {
    Vec3 position;
    UnitQuaternion orientation;
};

// Orientation of a levelled PTZ camera: azimuth yaw_deg about +z, then tilt_deg
// of elevation (negative looks down). The optical axis becomes
// (cos t cos y, cos t sin y, sin t).
UnitQuaternion orientation_from_yaw_tilt_deg(double yaw_deg, double tilt_deg);

CameraPose make_levelled_pose(const Vec3& position, double yaw_deg, double tilt_deg);

// Fuselage surrogate: infinite circular cylinder along the scene y-axis,
// axis at height h0 above the origin, radius r0.
class CylinderModel {
public:
    // Throws invalid_argument unless r0 > 0 and both values are finite.
    CylinderModel(double h0, double r0);

    double h0() const noexcept { return h0_; }
    double r0() const noexcept { return r0_; }

    // x^2 + (z - h0)^2 - r0^2; zero on the surface.
    double residual(const Vec3& p) const noexcept;

private:
    double h0_;
    double r0_;
};

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length

    // Validates |direction| = 1 within 1e-9 and finiteness.
    static Ray make(const Vec3& origin, const Vec3& direction);

    Vec3 at(double t) const noexcept { return origin + direction * t; }
};

Ray view_ray(const CameraPose& pose);

enum class IntersectFailure {
    none,
    no_intersection,
    behind_camera,
    axis_parallel_degenerate,
};

std::string_view failure_name(IntersectFailure f) noexcept;

class IntersectionError : public Error {
public:
    explicit IntersectionError(IntersectFailure failure);
    IntersectFailure failure() const noexcept { return failure_; }

private:
    IntersectFailure failure_;
};

struct CylinderHit {
    Vec3 point;
    double t{0.0};
};

struct IntersectResult {
    std::optional<CylinderHit> hit;
    IntersectFailure failure{IntersectFailure::none};

    explicit operator bool() const noexcept { return hit.has_value(); }
};

// Nearest intersection with t > kMinRayParameter; never throws.
IntersectResult try_intersect_cylinder(const Ray& ray, const CylinderModel& cyl) noexcept;

// As try_intersect_cylinder, but failures throw IntersectionError.
Vec3 intersect_cylinder(const Ray& ray, const CylinderModel& cyl);

struct YawPitchRoll {
    double yaw{0.0};  // radians
    double pitch{0.0};
    double roll{0.0};
    bool gimbal_degenerate{false};
};

// Inverse of UnitQuaternion::from_yaw_pitch_roll. At pitch = +-90 deg the roll
// is fixed to zero and the whole heading is reported as yaw.
YawPitchRoll to_yaw_pitch_roll(const UnitQuaternion& q) noexcept;

struct YawResult {
    double yaw_deg{0.0};  // (-180, 180]
    bool gimbal_degenerate{false};
};

YawResult yaw_from_quaternion(const UnitQuaternion& q) noexcept;

// Rotation angle between two orientations, 2*acos(|q1.q2|), in [0, 180] degrees.
double angular_distance_deg(const UnitQuaternion& a, const UnitQuaternion& b) noexcept;

}  // namespace ptzinspect
