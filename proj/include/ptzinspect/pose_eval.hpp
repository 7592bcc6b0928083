#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"

namespace ptzinspect {

enum class PoseSource {
    oracle,
    noisy_oracle,
    external_file,
};

std::string_view source_name(PoseSource s) noexcept;

struct PoseEstimate {
    Vec3 position;
    UnitQuaternion orientation;
    PoseSource source{PoseSource::oracle};

    CameraPose pose() const noexcept { return {position, orientation}; }
};

struct ErrorStats {
    double median_position{0.0};     // m
    double rmse_position{0.0};       // m
    double median_orientation{0.0};  // deg
    double rmse_orientation{0.0};    // deg
    std::size_t n{0};
};

// Median of the values; an even count averages the two central values.
// Throws invalid_argument on empty input.
double median(std::span<const double> values);

// sqrt(mean(v^2)). Throws invalid_argument on empty input.
double rms(std::span<const double> values);

// Pairs predictions[k] with ground_truths[k]. Position error is Euclidean
// distance, orientation error the rotation angle between the two.
ErrorStats evaluate(std::span<const PoseEstimate> predictions, std::span<const CameraPose> ground_truths);

PoseEstimate oracle(const CameraPose& gt) noexcept;

// Adds N(0, (sigma_pos/sqrt 3)^2) to each position axis and a N(0, sigma_yaw^2)
// rotation about the scene z-axis (applied on the left). Throws
// invalid_argument for negative or non-finite sigmas.
PoseEstimate noisy_oracle(const CameraPose& gt, double sigma_pos_m, double sigma_yaw_deg, std::uint64_t seed);

// Pose-record file (see pose_io.hpp); every estimate is tagged external_file.
std::vector<PoseEstimate> load_external_predictions(const std::filesystem::path& path);

}  // namespace ptzinspect
