#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/rng.hpp"

namespace pz = ptzinspect;

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Textbook unit-quaternion to rotation-matrix conversion.
Mat3 matrix_of(const pz::UnitQuaternion& q) {
    const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

pz::Vec3 mat_apply(const Mat3& m, const pz::Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

void expect_near(const pz::Vec3& a, const pz::Vec3& b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

pz::UnitQuaternion random_quaternion(pz::Rng& rng) {
    return pz::UnitQuaternion::from_components(rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1),
                                               rng.normal(0, 1));
}

}  // namespace

TEST(WrapDegrees, HalfOpenInterval) {
    EXPECT_DOUBLE_EQ(pz::wrap_degrees(180.0), 180.0);
    EXPECT_DOUBLE_EQ(pz::wrap_degrees(-180.0), 180.0);
    EXPECT_DOUBLE_EQ(pz::wrap_degrees(190.0), -170.0);
    EXPECT_DOUBLE_EQ(pz::wrap_degrees(-350.0), 10.0);
    EXPECT_DOUBLE_EQ(pz::wrap_degrees(720.0), 0.0);
}

TEST(Quaternion, ZeroNormRejected) {
    EXPECT_THROW(pz::UnitQuaternion::from_components(0, 0, 0, 0), pz::Error);
    EXPECT_THROW(pz::UnitQuaternion::from_components(NAN, 0, 0, 1), pz::Error);
}

TEST(Quaternion, ComponentsNormalized) {
    const auto q = pz::UnitQuaternion::from_components(2, 0, 0, 0);
    EXPECT_DOUBLE_EQ(q.w(), 1.0);
}

TEST(RotateVector, IdentityAndQuarterTurn) {
    expect_near(pz::rotate_vector(pz::UnitQuaternion{}, {1, 0, 0}), {1, 0, 0}, 0.0);
    const auto qz = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, std::numbers::pi / 2);
    expect_near(pz::rotate_vector(qz, {1, 0, 0}), {0, 1, 0}, 1e-15);
}

TEST(RotateVector, MatchesMatrixOracle) {
    pz::Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        const auto q = random_quaternion(rng);
        const pz::Vec3 v{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        expect_near(pz::rotate_vector(q, v), mat_apply(matrix_of(q), v), 1e-12);
    }
}

TEST(RotateVector, NonFiniteRejected) {
    EXPECT_THROW(pz::rotate_vector(pz::UnitQuaternion{}, {NAN, 0, 0}), pz::Error);
}

TEST(YawPitchRoll, IntrinsicOrderMatchesMatrixProduct) {
    pz::Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const double yaw = rng.uniform(-3, 3), pitch = rng.uniform(-1.5, 1.5), roll = rng.uniform(-3, 3);
        const auto q = pz::UnitQuaternion::from_yaw_pitch_roll(yaw, pitch, roll);
        const auto composed = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, yaw) *
                              pz::UnitQuaternion::from_axis_angle({0, 1, 0}, pitch) *
                              pz::UnitQuaternion::from_axis_angle({1, 0, 0}, roll);
        EXPECT_NEAR(pz::angular_distance_deg(q, composed), 0.0, 1e-9);
        const auto ypr = pz::to_yaw_pitch_roll(q);
        EXPECT_NEAR(ypr.yaw, yaw, 1e-9);
        EXPECT_NEAR(ypr.pitch, pitch, 1e-9);
        EXPECT_NEAR(ypr.roll, roll, 1e-9);
        EXPECT_FALSE(ypr.gimbal_degenerate);
    }
}

TEST(ViewRay, IdentityLooksForward) {
    const auto ray = pz::view_ray({{0, 0, 7}, pz::UnitQuaternion{}});
    expect_near(ray.origin, {0, 0, 7}, 0.0);
    expect_near(ray.direction, pz::kForward, 0.0);
}

TEST(ViewRay, YawedQuarterTurn) {
    const auto q = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, std::numbers::pi / 2);
    expect_near(pz::view_ray({{}, q}).direction, {0, 1, 0}, 1e-15);
}

TEST(ViewRay, RandomPoseIsUnit) {
    pz::Rng rng(13);
    for (int k = 0; k < 100; ++k) {
        const auto ray = pz::view_ray({{1, 2, 3}, random_quaternion(rng)});
        EXPECT_NEAR(pz::norm(ray.direction), 1.0, 1e-12);
    }
}

TEST(LevelledPose, AxisFromYawAndTilt) {
    const auto pose = pz::make_levelled_pose({0, 0, 0}, 20.0, -18.0);
    const double y = pz::deg_to_rad(20.0), t = pz::deg_to_rad(-18.0);
    expect_near(pz::view_ray(pose).direction, {std::cos(t) * std::cos(y), std::cos(t) * std::sin(y), std::sin(t)},
                1e-15);
}

TEST(Ray, RejectsNonUnitDirection) {
    EXPECT_THROW(pz::Ray::make({0, 0, 0}, {2, 0, 0}), pz::Error);
    EXPECT_THROW(pz::Ray::make({NAN, 0, 0}, {1, 0, 0}), pz::Error);
}

TEST(Cylinder, RejectsBadRadius) {
    EXPECT_THROW(pz::CylinderModel(2, 0), pz::Error);
    EXPECT_THROW(pz::CylinderModel(2, -1), pz::Error);
    EXPECT_THROW(pz::CylinderModel(NAN, 1), pz::Error);
}

TEST(IntersectCylinder, SideHit) {
    const pz::CylinderModel cyl(2.0, 2.0);
    expect_near(pz::intersect_cylinder(pz::Ray::make({-10, 0, 2}, {1, 0, 0}), cyl), {-2, 0, 2}, 1e-12);
}

TEST(IntersectCylinder, TopHit) {
    const pz::CylinderModel cyl(2.0, 2.0);
    expect_near(pz::intersect_cylinder(pz::Ray::make({0, 5, 12}, {0, 0, -1}), cyl), {0, 5, 4}, 1e-12);
}

TEST(IntersectCylinder, Failures) {
    const pz::CylinderModel cyl(2.0, 2.0);
    EXPECT_EQ(pz::try_intersect_cylinder(pz::Ray::make({-10, 0, 2}, {0, 1, 0}), cyl).failure,
              pz::IntersectFailure::axis_parallel_degenerate);
    EXPECT_EQ(pz::try_intersect_cylinder(pz::Ray::make({-10, 0, 10}, {1, 0, 0}), cyl).failure,
              pz::IntersectFailure::no_intersection);
    EXPECT_EQ(pz::try_intersect_cylinder(pz::Ray::make({-10, 0, 2}, {-1, 0, 0}), cyl).failure,
              pz::IntersectFailure::behind_camera);
    try {
        pz::intersect_cylinder(pz::Ray::make({-10, 0, 10}, {1, 0, 0}), cyl);
        FAIL();
    } catch (const pz::IntersectionError& e) {
        EXPECT_EQ(e.failure(), pz::IntersectFailure::no_intersection);
        EXPECT_EQ(e.category(), pz::ErrorCategory::geometry);
    }
}

TEST(IntersectCylinder, InsideOriginTakesFarRoot) {
    const pz::CylinderModel cyl(2.0, 2.0);
    expect_near(pz::intersect_cylinder(pz::Ray::make({0, 0, 2}, {1, 0, 0}), cyl), {2, 0, 2}, 1e-12);
}

TEST(YawFromQuaternion, Examples) {
    EXPECT_DOUBLE_EQ(pz::yaw_from_quaternion(pz::UnitQuaternion{}).yaw_deg, 0.0);
    const auto q = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, pz::deg_to_rad(25.0));
    EXPECT_NEAR(pz::yaw_from_quaternion(q).yaw_deg, 25.0, 1e-12);
}

TEST(YawFromQuaternion, ZThenTiltRoundTrip) {
    pz::Rng rng(14);
    for (int k = 0; k < 500; ++k) {
        const double yaw = rng.uniform(-179, 179), tilt = rng.uniform(-80, 80);
        EXPECT_NEAR(pz::yaw_from_quaternion(pz::orientation_from_yaw_tilt_deg(yaw, tilt)).yaw_deg, yaw, 1e-9);
    }
}

TEST(YawFromQuaternion, GimbalFlagged) {
    const auto q = pz::UnitQuaternion::from_yaw_pitch_roll(0.3, std::numbers::pi / 2, 0.0);
    const auto r = pz::yaw_from_quaternion(q);
    EXPECT_TRUE(r.gimbal_degenerate);
    EXPECT_NEAR(r.yaw_deg, pz::rad_to_deg(0.3), 1e-6);
}

TEST(AngularDistance, Examples) {
    pz::Rng rng(15);
    const auto q = random_quaternion(rng);
    EXPECT_NEAR(pz::angular_distance_deg(q, q), 0.0, 1e-12);
    EXPECT_NEAR(pz::angular_distance_deg(q, q.negated()), 0.0, 1e-12);
    const auto z10 = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, pz::deg_to_rad(10.0));
    EXPECT_NEAR(pz::angular_distance_deg(pz::UnitQuaternion{}, z10), 10.0, 1e-12);
}
