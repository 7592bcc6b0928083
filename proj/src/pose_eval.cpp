#include "ptzinspect/pose_eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptzinspect/pose_io.hpp"
#include "ptzinspect/rng.hpp"

namespace ptzinspect {

std::string_view source_name(PoseSource s) noexcept {
    switch (s) {
        case PoseSource::oracle: return "oracle";
        case PoseSource::noisy_oracle: return "noisy-oracle";
        case PoseSource::external_file: return "external-file";
    }
    return "unknown";
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorCategory::invalid_argument, "median of an empty set");
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) {
        return v[n / 2];
    }
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double rms(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorCategory::invalid_argument, "rms of an empty set");
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v * v;
    }
    return std::sqrt(sum / static_cast<double>(values.size()));
}

ErrorStats evaluate(std::span<const PoseEstimate> predictions, std::span<const CameraPose> ground_truths) {
    if (predictions.size() != ground_truths.size()) {
        throw Error(ErrorCategory::invalid_argument,
                    "prediction count " + std::to_string(predictions.size()) + " differs from ground-truth count " +
                        std::to_string(ground_truths.size()));
    }
    if (predictions.empty()) {
        throw Error(ErrorCategory::invalid_argument, "evaluate needs at least one pose pair");
    }
    std::vector<double> pos(predictions.size());
    std::vector<double> ang(predictions.size());
    for (std::size_t k = 0; k < predictions.size(); ++k) {
        pos[k] = distance(predictions[k].position, ground_truths[k].position);
        ang[k] = angular_distance_deg(predictions[k].orientation, ground_truths[k].orientation);
    }
    return ErrorStats{median(pos), rms(pos), median(ang), rms(ang), predictions.size()};
}

PoseEstimate oracle(const CameraPose& gt) noexcept {
    return PoseEstimate{gt.position, gt.orientation, PoseSource::oracle};
}

PoseEstimate noisy_oracle(const CameraPose& gt, double sigma_pos_m, double sigma_yaw_deg, std::uint64_t seed) {
    if (!(sigma_pos_m >= 0.0) || !(sigma_yaw_deg >= 0.0) || !std::isfinite(sigma_pos_m) ||
        !std::isfinite(sigma_yaw_deg)) {
        throw Error(ErrorCategory::invalid_argument, "noise sigmas must be finite and non-negative");
    }
    PoseEstimate est{gt.position, gt.orientation, PoseSource::noisy_oracle};
    if (sigma_pos_m == 0.0 && sigma_yaw_deg == 0.0) {
        return est;
    }
    Rng rng(seed);
    const double axis_sigma = sigma_pos_m / std::sqrt(3.0);
    const double dx = rng.normal(0.0, axis_sigma);
    const double dy = rng.normal(0.0, axis_sigma);
    const double dz = rng.normal(0.0, axis_sigma);
    const double dyaw = rng.normal(0.0, sigma_yaw_deg);
    est.position = gt.position + Vec3{dx, dy, dz};
    if (dyaw != 0.0) {
        est.orientation = UnitQuaternion::from_axis_angle({0.0, 0.0, 1.0}, deg_to_rad(dyaw)) * gt.orientation;
    }
    return est;
}

std::vector<PoseEstimate> load_external_predictions(const std::filesystem::path& path) {
    std::vector<PoseEstimate> out;
    for (const PoseRecord& r : load_pose_records(path)) {
        out.push_back(PoseEstimate{r.pose.position, r.pose.orientation, PoseSource::external_file});
    }
    return out;
}

}  // namespace ptzinspect
