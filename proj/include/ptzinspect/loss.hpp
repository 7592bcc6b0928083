#pragma once

// Camera-pose regression losses: the homoscedastic position/orientation
// loss and its extension with the image-centre scene-coordinate (ICSC) term,
// the distance between where the true and predicted optical axes meet the
// fuselage cylinder. Everything here is a pure function of its inputs.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"

namespace ptzinspect {

struct PoseSample {
    CameraPose truth;
    Vec3 predicted_position;
    // (w, x, y, z) as regressed; normalized wherever it is used.
    std::array<double, 4> predicted_orientation_raw{1.0, 0.0, 0.0, 0.0};
};

// Throws invalid_argument for a zero-norm raw prediction.
UnitQuaternion predicted_orientation(const PoseSample& sample);
CameraPose predicted_pose(const PoseSample& sample);

// Log-variances s = log(sigma^2) of the three loss terms.
struct LossWeights {
    double s_x{0.0};
    double s_q{0.0};
    double s_c{0.0};
};

enum class IcscFallback {
    skip_component,  // drop the ICSC term for this sample
    error,           // throw IntersectionError
};

enum class IcscStatus {
    hit,
    fallback_skipped,
};

std::string_view status_name(IcscStatus s) noexcept;

struct IcscResult {
    std::optional<double> value;  // metres; absent when skipped
    IcscStatus status{IcscStatus::hit};
};

// ||x - x_hat||
double position_loss(const PoseSample& sample);

// ||q - q_hat / |q_hat| ||, taken literally: q and -q are not identified.
double orientation_loss(const PoseSample& sample);

// Distance between the cylinder hits of the true and predicted view rays.
// A true ray that misses is an invalid setup (Error, invalid_setup).
IcscResult icsc_loss(const PoseSample& sample, const CylinderModel& cyl, IcscFallback fallback);

struct LossComponents {
    double l_x{0.0};
    double l_q{0.0};
    std::optional<double> l_c;
};

struct LossBreakdown {
    double l_x{0.0};
    double l_q{0.0};
    std::optional<double> l_c;
    double total{0.0};
    IcscStatus icsc_status{IcscStatus::hit};
};

// sum_k L_k exp(-s_k) + s_k over the present components.
double weighted_total(const LossComponents& c, const LossWeights& w) noexcept;

// The same objective written with variances: sum_k L_k / sigma_k^2 + log sigma_k^2.
struct LossVariances {
    double var_x{1.0};
    double var_q{1.0};
    double var_c{1.0};
};
double weighted_total_sigma(const LossComponents& c, const LossVariances& v) noexcept;

LossBreakdown combined_loss(const PoseSample& sample, const LossWeights& weights, const CylinderModel& cyl,
                            bool include_icsc, IcscFallback fallback = IcscFallback::skip_component);

// argmin_s of mean_loss * exp(-s) + s, which is log(mean_loss). The minimum
// value is 1 + log(mean_loss). Throws invalid_argument unless mean_loss > 0.
double optimal_log_variance(double mean_component_loss);

// Central-difference gradient of f at `at`. Throws invalid_argument unless
// step lies in [1e-7, 1e-3].
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> at, double step);

struct LossGradient {
    double s_x{0.0};
    double s_q{0.0};
    double s_c{0.0};
    Vec3 predicted_position;
};

// Numerical gradient of combined_loss(...).total with respect to the three
// log-variances and the predicted position.
LossGradient finite_difference_grad(const PoseSample& sample, const LossWeights& weights,
                                    const CylinderModel& cyl, bool include_icsc, IcscFallback fallback,
                                    double step);

// Closed-form derivative of L exp(-s) + s with respect to s.
inline double log_variance_derivative(double component_loss, double s) noexcept {
    return 1.0 - component_loss * std::exp(-s);
}

struct BatchSummary {
    std::size_t samples{0};
    std::size_t icsc_skipped{0};
    double mean_l_x{0.0};
    double mean_l_q{0.0};
    std::optional<double> mean_l_c;  // over samples where the term was present
    double mean_total{0.0};
};

// Sequential left-to-right reduction, so sums are reproducible.
BatchSummary summarize(std::span<const LossBreakdown> rows) noexcept;

}  // namespace ptzinspect
