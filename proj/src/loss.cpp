#include "ptzinspect/loss.hpp"

#include <cmath>

namespace ptzinspect {

std::string_view status_name(IcscStatus s) noexcept {
    return s == IcscStatus::hit ? "hit" : "fallback-skipped";
}

UnitQuaternion predicted_orientation(const PoseSample& sample) {
    const auto& q = sample.predicted_orientation_raw;
    return UnitQuaternion::from_components(q[0], q[1], q[2], q[3]);
}

CameraPose predicted_pose(const PoseSample& sample) {
    return CameraPose{sample.predicted_position, predicted_orientation(sample)};
}

double position_loss(const PoseSample& sample) {
    return distance(sample.truth.position, sample.predicted_position);
}

double orientation_loss(const PoseSample& sample) {
    const UnitQuaternion q_hat = predicted_orientation(sample);
    const UnitQuaternion& q = sample.truth.orientation;
    const double dw = q.w() - q_hat.w();
    const double dx = q.x() - q_hat.x();
    const double dy = q.y() - q_hat.y();
    const double dz = q.z() - q_hat.z();
    return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

IcscResult icsc_loss(const PoseSample& sample, const CylinderModel& cyl, IcscFallback fallback) {
    const IntersectResult truth = try_intersect_cylinder(view_ray(sample.truth), cyl);
    if (!truth) {
        throw Error(ErrorCategory::invalid_setup,
                    "true view ray does not meet the fuselage cylinder (" +
                        std::string(failure_name(truth.failure)) + ")");
    }
    const IntersectResult predicted = try_intersect_cylinder(view_ray(predicted_pose(sample)), cyl);
    if (!predicted) {
        if (fallback == IcscFallback::error) {
            throw IntersectionError(predicted.failure);
        }
        return {std::nullopt, IcscStatus::fallback_skipped};
    }
    return {distance(truth.hit->point, predicted.hit->point), IcscStatus::hit};
}

double weighted_total(const LossComponents& c, const LossWeights& w) noexcept {
    double total = c.l_x * std::exp(-w.s_x) + w.s_x + c.l_q * std::exp(-w.s_q) + w.s_q;
    if (c.l_c) {
        total += *c.l_c * std::exp(-w.s_c) + w.s_c;
    }
    return total;
}

double weighted_total_sigma(const LossComponents& c, const LossVariances& v) noexcept {
    double total = c.l_x / v.var_x + std::log(v.var_x) + c.l_q / v.var_q + std::log(v.var_q);
    if (c.l_c) {
        total += *c.l_c / v.var_c + std::log(v.var_c);
    }
    return total;
}

LossBreakdown combined_loss(const PoseSample& sample, const LossWeights& weights, const CylinderModel& cyl,
                            bool include_icsc, IcscFallback fallback) {
    LossBreakdown out;
    out.l_x = position_loss(sample);
    out.l_q = orientation_loss(sample);
    if (include_icsc) {
        const IcscResult c = icsc_loss(sample, cyl, fallback);
        out.l_c = c.value;
        out.icsc_status = c.status;
    }
    out.total = weighted_total(LossComponents{out.l_x, out.l_q, out.l_c}, weights);
    return out;
}

double optimal_log_variance(double mean_component_loss) {
    if (!(mean_component_loss > 0.0) || !std::isfinite(mean_component_loss)) {
        throw Error(ErrorCategory::invalid_argument, "optimal_log_variance needs a positive finite mean loss");
    }
    return std::log(mean_component_loss);
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> at, double step) {
    if (!(step >= 1e-7 && step <= 1e-3)) {
        throw Error(ErrorCategory::invalid_argument, "finite-difference step must lie in [1e-7, 1e-3]");
    }
    std::vector<double> x(at.begin(), at.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + step;
        const double up = f(x);
        x[i] = orig - step;
        const double down = f(x);
        x[i] = orig;
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

LossGradient finite_difference_grad(const PoseSample& sample, const LossWeights& weights,
                                    const CylinderModel& cyl, bool include_icsc, IcscFallback fallback,
                                    double step) {
    // Parameter vector: s_x, s_q, s_c, x_hat, y_hat, z_hat.
    const std::array<double, 6> at{weights.s_x, weights.s_q, weights.s_c, sample.predicted_position.x,
                                   sample.predicted_position.y, sample.predicted_position.z};
    const auto f = [&](std::span<const double> p) {
        PoseSample s = sample;
        s.predicted_position = {p[3], p[4], p[5]};
        return combined_loss(s, LossWeights{p[0], p[1], p[2]}, cyl, include_icsc, fallback).total;
    };
    const std::vector<double> g = central_difference(f, at, step);
    return LossGradient{g[0], g[1], g[2], {g[3], g[4], g[5]}};
}

BatchSummary summarize(std::span<const LossBreakdown> rows) noexcept {
    BatchSummary s;
    s.samples = rows.size();
    if (rows.empty()) {
        return s;
    }
    double sx = 0.0, sq = 0.0, sc = 0.0, st = 0.0;
    std::size_t nc = 0;
    for (const LossBreakdown& r : rows) {
        sx += r.l_x;
        sq += r.l_q;
        st += r.total;
        if (r.l_c) {
            sc += *r.l_c;
            ++nc;
        }
        if (r.icsc_status == IcscStatus::fallback_skipped) {
            ++s.icsc_skipped;
        }
    }
    const double n = static_cast<double>(rows.size());
    s.mean_l_x = sx / n;
    s.mean_l_q = sq / n;
    s.mean_total = st / n;
    if (nc > 0) {
        s.mean_l_c = sc / static_cast<double>(nc);
    }
    return s;
}

}  // namespace ptzinspect
