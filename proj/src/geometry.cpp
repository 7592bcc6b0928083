#include "ptzinspect/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ptzinspect {

double wrap_degrees(double deg) noexcept {
    double wrapped = std::fmod(deg, 360.0);
    if (wrapped <= -180.0) {
        wrapped += 360.0;
    } else if (wrapped > 180.0) {
        wrapped -= 360.0;
    }
    return wrapped;
}

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (!std::isfinite(n) || n == 0.0) {
        throw Error(ErrorCategory::invalid_argument, "cannot normalize a zero-length or non-finite vector");
    }
    return v / n;
}

UnitQuaternion UnitQuaternion::from_components(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!std::isfinite(n)) {
        throw Error(ErrorCategory::invalid_argument, "quaternion has non-finite components");
    }
    if (n == 0.0) {
        throw Error(ErrorCategory::invalid_argument, "quaternion has zero norm");
    }
    return raw(w / n, x / n, y / n, z / n);
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double angle_rad) {
    const Vec3 u = normalized(axis);
    if (!std::isfinite(angle_rad)) {
        throw Error(ErrorCategory::invalid_argument, "rotation angle is not finite");
    }
    const double s = std::sin(0.5 * angle_rad);
    return from_components(std::cos(0.5 * angle_rad), u.x * s, u.y * s, u.z * s);
}

UnitQuaternion UnitQuaternion::from_yaw_pitch_roll(double yaw_rad, double pitch_rad, double roll_rad) {
    const double cy = std::cos(0.5 * yaw_rad), sy = std::sin(0.5 * yaw_rad);
    const double cp = std::cos(0.5 * pitch_rad), sp = std::sin(0.5 * pitch_rad);
    const double cr = std::cos(0.5 * roll_rad), sr = std::sin(0.5 * roll_rad);
    // qz(yaw) * qy(pitch) * qx(roll)
    return from_components(cr * cp * cy + sr * sp * sy,
                           sr * cp * cy - cr * sp * sy,
                           cr * sp * cy + sr * cp * sy,
                           cr * cp * sy - sr * sp * cy);
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& o) const {
    return from_components(w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_,
                           w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_,
                           w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_,
                           w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_);
}

Vec3 rotate_vector(const UnitQuaternion& q, const Vec3& v) {
    if (!is_finite(v)) {
        throw Error(ErrorCategory::invalid_argument, "rotate_vector: non-finite vector");
    }
    // v' = v + 2w (u x v) + 2 u x (u x v)
    const Vec3 u{q.x(), q.y(), q.z()};
    const Vec3 uv = cross(u, v);
    const Vec3 uuv = cross(u, uv);
    return v + (uv * q.w() + uuv) * 2.0;
}

UnitQuaternion orientation_from_yaw_tilt_deg(double yaw_deg, double tilt_deg) {
    // Positive pitch about y' turns +x toward -z, so elevation is -pitch.
    return UnitQuaternion::from_yaw_pitch_roll(deg_to_rad(yaw_deg), deg_to_rad(-tilt_deg), 0.0);
}

CameraPose make_levelled_pose(const Vec3& position, double yaw_deg, double tilt_deg) {
    return CameraPose{position, orientation_from_yaw_tilt_deg(yaw_deg, tilt_deg)};
}

CylinderModel::CylinderModel(double h0, double r0) : h0_(h0), r0_(r0) {
    if (!std::isfinite(h0) || !std::isfinite(r0) || !(r0 > 0.0)) {
        throw Error(ErrorCategory::invalid_argument, "cylinder needs finite h0 and r0 > 0");
    }
}

double CylinderModel::residual(const Vec3& p) const noexcept {
    const double dz = p.z - h0_;
    return p.x * p.x + dz * dz - r0_ * r0_;
}

Ray Ray::make(const Vec3& origin, const Vec3& direction) {
    if (!is_finite(origin) || !is_finite(direction)) {
        throw Error(ErrorCategory::invalid_argument, "ray has non-finite components");
    }
    if (std::abs(norm(direction) - 1.0) > 1e-9) {
        throw Error(ErrorCategory::invalid_argument, "ray direction must be unit length");
    }
    return Ray{origin, direction};
}

Ray view_ray(const CameraPose& pose) {
    return Ray::make(pose.position, rotate_vector(pose.orientation, kForward));
}

std::string_view failure_name(IntersectFailure f) noexcept {
    switch (f) {
    case IntersectFailure::none: return "none";
    case IntersectFailure::no_intersection: return "no-intersection";
    case IntersectFailure::behind_camera: return "behind-camera";
    case IntersectFailure::axis_parallel_degenerate: return "axis-parallel-degenerate";
    }
    return "unknown";
}

IntersectionError::IntersectionError(IntersectFailure failure)
    : Error(ErrorCategory::geometry, "ray-cylinder intersection failed: " + std::string(failure_name(failure))),
      failure_(failure) {}

IntersectResult try_intersect_cylinder(const Ray& ray, const CylinderModel& cyl) noexcept {
    const Vec3& o = ray.origin;
    const Vec3& v = ray.direction;
    const double oz = o.z - cyl.h0();

    const double a = v.x * v.x + v.z * v.z;
    const double b = 2.0 * (o.x * v.x + oz * v.z);
    const double c = o.x * o.x + oz * oz - cyl.r0() * cyl.r0();

    if (a <= 1e-24) {
        return {std::nullopt, IntersectFailure::axis_parallel_degenerate};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return {std::nullopt, IntersectFailure::no_intersection};
    }

    // Cancellation-free root pair.
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double t1 = q / a;
    double t2 = (q != 0.0) ? c / q : t1;
    if (t1 > t2) {
        std::swap(t1, t2);
    }

    double t;
    if (t1 > kMinRayParameter) {
        t = t1;
    } else if (t2 > kMinRayParameter) {
        t = t2;
    } else {
        return {std::nullopt, IntersectFailure::behind_camera};
    }

    // One Newton step tightens the surface residual for near-grazing rays.
    const double f = (a * t + b) * t + c;
    const double df = 2.0 * a * t + b;
    if (std::abs(df) > 1e-12) {
        const double polished = t - f / df;
        if (polished > kMinRayParameter && std::abs((a * polished + b) * polished + c) < std::abs(f)) {
            t = polished;
        }
    }
    return {CylinderHit{ray.at(t), t}, IntersectFailure::none};
}

Vec3 intersect_cylinder(const Ray& ray, const CylinderModel& cyl) {
    const IntersectResult r = try_intersect_cylinder(ray, cyl);
    if (!r.hit) {
        throw IntersectionError(r.failure);
    }
    return r.hit->point;
}

YawPitchRoll to_yaw_pitch_roll(const UnitQuaternion& q) noexcept {
    const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
    // Rotation-matrix entries used below (R = Rz(yaw) Ry(pitch) Rx(roll)).
    const double r00 = 1.0 - 2.0 * (y * y + z * z);
    const double r10 = 2.0 * (x * y + w * z);
    const double r20 = 2.0 * (x * z - w * y);
    const double r21 = 2.0 * (y * z + w * x);
    const double r22 = 1.0 - 2.0 * (x * x + y * y);
    const double r01 = 2.0 * (x * y - w * z);
    const double r11 = 1.0 - 2.0 * (x * x + z * z);

    YawPitchRoll out;
    const double sp = std::clamp(-r20, -1.0, 1.0);
    if (std::abs(sp) >= 1.0 - 1e-12) {
        out.gimbal_degenerate = true;
        out.pitch = std::copysign(std::numbers::pi / 2.0, sp);
        out.roll = 0.0;
        out.yaw = std::atan2(-r01, r11);
    } else {
        out.pitch = std::asin(sp);
        out.yaw = std::atan2(r10, r00);
        out.roll = std::atan2(r21, r22);
    }
    return out;
}

YawResult yaw_from_quaternion(const UnitQuaternion& q) noexcept {
    const YawPitchRoll ypr = to_yaw_pitch_roll(q);
    return {wrap_degrees(rad_to_deg(ypr.yaw)), ypr.gimbal_degenerate};
}

double angular_distance_deg(const UnitQuaternion& a, const UnitQuaternion& b) noexcept {
    // Relative rotation a^-1 b; atan2 keeps small angles accurate where acos would not.
    const double w = dot(a, b);
    const double x = a.w() * b.x() - a.x() * b.w() - a.y() * b.z() + a.z() * b.y();
    const double y = a.w() * b.y() + a.x() * b.z() - a.y() * b.w() - a.z() * b.x();
    const double z = a.w() * b.z() - a.x() * b.y() + a.y() * b.x() - a.z() * b.w();
    const double s = std::sqrt(x * x + y * y + z * z);
    return rad_to_deg(2.0 * std::atan2(s, std::abs(w)));
}

}  // namespace ptzinspect
