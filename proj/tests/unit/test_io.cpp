#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "ptzinspect/point_cloud.hpp"
#include "ptzinspect/pose_io.hpp"
#include "ptzinspect/rng.hpp"
#include "ptzinspect/text_io.hpp"

namespace pz = ptzinspect;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path p = fs::temp_directory_path() / "ptzinspect_test_io";
    fs::create_directories(p);
    return p;
}

std::size_t parse_error_line(const std::function<void()>& f) {
    try {
        f();
    } catch (const pz::ParseError& e) {
        return e.line();
    }
    return static_cast<std::size_t>(-1);
}

}  // namespace

TEST(TextIo, SplitRecordsDropsCommentsAndBlanks) {
    const auto recs = pz::split_records("# header\n1 2 3\n\n  4,5 6 # tail\n#only\n");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].line, 2u);
    EXPECT_EQ(recs[1].line, 4u);
    EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"4", "5", "6"}));
}

TEST(TextIo, ParseDoubleIsStrict) {
    EXPECT_DOUBLE_EQ(pz::parse_double("-1.5e2", "t", 1), -150.0);
    EXPECT_THROW(pz::parse_double("1.5x", "t", 1), pz::ParseError);
    EXPECT_THROW(pz::parse_double("", "t", 1), pz::ParseError);
    EXPECT_THROW(pz::parse_double("nan", "t", 1), pz::ParseError);
}

TEST(TextIo, FormatDoubleRoundTrips) {
    pz::Rng rng(51);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.normal(0, 1e3);
        EXPECT_EQ(pz::parse_double(pz::format_double(v), "t", 1), v);
    }
}

TEST(TextIo, AtomicWriteAndMissingRead) {
    const fs::path p = scratch_dir() / "atomic.txt";
    pz::write_text_file_atomic(p, "hello\n");
    EXPECT_EQ(pz::read_text_file(p), "hello\n");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
    try {
        pz::read_text_file(scratch_dir() / "does_not_exist.txt");
        FAIL();
    } catch (const pz::Error& e) {
        EXPECT_EQ(e.category(), pz::ErrorCategory::io);
    }
    EXPECT_THROW(pz::write_text_file_atomic(scratch_dir() / "no_such_dir" / "x.txt", "x"), pz::Error);
}

TEST(PoseIo, PitchPositiveLooksDown) {
    const auto q = pz::orientation_from_ypr_deg(0.0, 30.0, 0.0);
    EXPECT_LT(pz::rotate_vector(q, pz::kForward).z, 0.0);
}

TEST(PoseIo, RoundTrip) {
    const auto recs = pz::parse_pose_records("a 1 2 3 20 -5 1\nb -12 10 6.75 -170 18 0\n", "t");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].id, "a");
    const auto again = pz::parse_pose_records(pz::format_pose_records(recs), "t");
    ASSERT_EQ(again.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(again[k].id, recs[k].id);
        EXPECT_NEAR(pz::distance(again[k].pose.position, recs[k].pose.position), 0.0, 1e-12);
        EXPECT_NEAR(pz::angular_distance_deg(again[k].pose.orientation, recs[k].pose.orientation), 0.0, 1e-9);
    }
}

TEST(PoseIo, MalformedRecordReportsLine) {
    EXPECT_EQ(parse_error_line([] { pz::parse_pose_records("a 1 2 3 0 0 0\n\nb 1 2 3 0 0\n", "t"); }), 3u);
    EXPECT_EQ(parse_error_line([] { pz::parse_pose_records("a 1 2 x 0 0 0\n", "t"); }), 1u);
}

TEST(PoseIo, LossRecordsWithAndWithoutWeights) {
    const auto recs = pz::parse_loss_records(
        "s1 -10 0 2 0 0 0 -10 0.5 2 0 0 0\n"
        "s2 -10 0 2 0 0 0 -10 0.5 2 0 0 0 0.1 0.2 0.3\n",
        "t");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_FALSE(recs[0].weights.has_value());
    ASSERT_TRUE(recs[1].weights.has_value());
    EXPECT_DOUBLE_EQ(recs[1].weights->s_c, 0.3);
    EXPECT_DOUBLE_EQ(recs[0].sample.predicted_position.y, 0.5);
    EXPECT_THROW(pz::parse_loss_records("s -10 0 2 0 0 0 -10 0.5 2 0 0 0 1\n", "t"), pz::ParseError);
    const auto again = pz::parse_loss_records(pz::format_loss_records(recs), "t");
    ASSERT_EQ(again.size(), 2u);
    EXPECT_TRUE(again[1].weights.has_value());
}

TEST(PointCloud, XyzThreeLines) {
    const auto c = pz::parse_xyz("0 0 0\n1 2 3\n4 5 6 wing\n", "t");
    EXPECT_EQ(c.size(), 3u);
    ASSERT_TRUE(c.has_tags());
    EXPECT_EQ(c.tags[2], "wing");
    EXPECT_EQ(c.tags[0], "");
}

TEST(PointCloud, XyzErrors) {
    EXPECT_EQ(parse_error_line([] { pz::parse_xyz("1 2 3\n1 2\n", "t"); }), 2u);
    EXPECT_THROW(pz::parse_xyz("# nothing\n", "t"), pz::ParseError);
}

TEST(PointCloud, PlyCountMismatch) {
    const std::string ply =
        "ply\nformat ascii 1.0\nelement vertex 3\nproperty float x\nproperty float y\nproperty float z\n"
        "end_header\n0 0 0\n1 1 1\n";
    EXPECT_THROW(pz::parse_ply(ply, "t"), pz::ParseError);
}

TEST(PointCloud, PlyBinaryRejected) {
    const std::string ply =
        "ply\nformat binary_little_endian 1.0\nelement vertex 1\nproperty float x\nproperty float y\n"
        "property float z\nend_header\n";
    EXPECT_THROW(pz::parse_ply(ply, "t"), pz::ParseError);
}

TEST(PointCloud, PlyExtraPropertiesAndFaces) {
    const std::string ply =
        "ply\nformat ascii 1.0\ncomment test\nelement vertex 2\nproperty float nx\nproperty float x\n"
        "property float y\nproperty float z\nelement face 1\nproperty list uchar int vertex_indices\n"
        "end_header\n9 1 2 3\n9 4 5 6\n3 0 1 1\n";
    const auto c = pz::parse_ply(ply, "t");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.points[1], (pz::Vec3{4, 5, 6}));
}

TEST(PointCloud, RoundTripBothFormats) {
    pz::Rng rng(52);
    pz::PointCloud cloud;
    for (int k = 0; k < 500; ++k) {
        cloud.points.push_back({rng.normal(0, 10), rng.normal(0, 10), rng.normal(0, 10)});
    }
    for (const auto fmt : {pz::CloudFormat::xyz_ascii, pz::CloudFormat::ply_ascii}) {
        const fs::path p = scratch_dir() / (fmt == pz::CloudFormat::ply_ascii ? "rt.ply" : "rt.xyz");
        pz::write_text_file_atomic(p, fmt == pz::CloudFormat::ply_ascii ? pz::format_ply(cloud)
                                                                        : pz::format_xyz(cloud));
        EXPECT_EQ(pz::format_from_path(p), fmt);
        const auto back = pz::load_point_cloud(p);
        ASSERT_EQ(back.size(), cloud.size());
        for (std::size_t k = 0; k < cloud.size(); ++k) {
            EXPECT_NEAR(pz::distance(back.points[k], cloud.points[k]), 0.0, 1e-9);
        }
    }
}
