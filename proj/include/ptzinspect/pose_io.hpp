#pragma once

// Plain-text pose files. Fields are whitespace separated, '#' starts a
// comment, angles are degrees and positions metres.
//
//   pose record:  id  x y z  yaw pitch roll
//   loss record:  id  x y z yaw pitch roll  x' y' z' yaw' pitch' roll'  [s_x s_q s_c]
//
// yaw/pitch/roll are intrinsic z-y'-x'' Euler angles of the camera body
// (pitch is positive when the optical axis points down). The primed block of
// a loss record is the prediction.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/loss.hpp"

namespace ptzinspect {

struct PoseRecord {
    std::string id;
    CameraPose pose;
};

struct LossRecord {
    std::string id;
    PoseSample sample;
    std::optional<LossWeights> weights;
};

UnitQuaternion orientation_from_ypr_deg(double yaw_deg, double pitch_deg, double roll_deg);

std::vector<PoseRecord> parse_pose_records(std::string_view text, const std::string& source);
std::vector<PoseRecord> load_pose_records(const std::filesystem::path& path);
std::string format_pose_records(std::span<const PoseRecord> records);

std::vector<LossRecord> parse_loss_records(std::string_view text, const std::string& source);
std::vector<LossRecord> load_loss_records(const std::filesystem::path& path);
std::string format_loss_records(std::span<const LossRecord> records);

}  // namespace ptzinspect
