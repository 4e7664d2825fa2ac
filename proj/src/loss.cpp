#include "enercast/loss.hpp"

#include "enercast/errors.hpp"

#include <cmath>

namespace enercast {

std::string loss_kind_name(LossKind k) {
    switch (k) {
        case LossKind::l1: return "l1";
        case LossKind::l2: return "l2";
        case LossKind::smooth_l1: return "smooth_l1";
        case LossKind::mape: return "mape";
        case LossKind::osdf: return "osdf";
    }
    return "unknown";
}

Loss Loss::osdf(double lambda, bool stop_gradient) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ValidationError("osdf lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
    return {LossKind::osdf, lambda, stop_gradient};
}

std::string Loss::name() const {
    return loss_kind_name(kind);
}

namespace {

double sign(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

void check_lengths(std::span<const double> p, std::span<const double> t) {
    if (p.size() != t.size() || p.empty()) {
        throw ShapeError("loss: prediction length " + std::to_string(p.size()) +
                         " vs target length " + std::to_string(t.size()));
    }
}

void check_target_guard(std::span<const double> t) {
    for (double g : t) {
        if (std::fabs(g) < kZeroGuard) {
            throw DegenerateTargetError("target entry " + std::to_string(g) +
                                        " below zero guard " + std::to_string(kZeroGuard));
        }
    }
}

// Shared percentage-error kernel: lambda = 0 is mape, lambda in (0, 1)
// is the self-distilled variant. Per entry:
//   value = |t - (1-lambda) p| / |t + lambda p|
// full-gradient derivative (numerator n, denominator d):
//   d/dp |n/d| = -sign(n/d) * t / d^2
// stop-gradient derivative (soft target held constant):
//   d/dp |n| / |d| = -(1-lambda) * sign(n) / |d|
double pct_entry_value(double p, double t, double lambda) {
    double n = t - (1.0 - lambda) * p;
    double d = t + lambda * p;
    return std::fabs(n / d);
}

double pct_entry_grad(double p, double t, double lambda, bool stop_gradient) {
    double n = t - (1.0 - lambda) * p;
    double d = t + lambda * p;
    if (stop_gradient) return -(1.0 - lambda) * sign(n) / std::fabs(d);
    return -sign(n / d) * t / (d * d);
}

} // namespace

double loss_value(const Loss& loss, std::span<const double> p, std::span<const double> t) {
    check_lengths(p, t);
    const std::size_t n = p.size();
    double acc = 0.0;
    switch (loss.kind) {
        case LossKind::l1:
            for (std::size_t i = 0; i < n; ++i) acc += std::fabs(p[i] - t[i]);
            break;
        case LossKind::l2:
            for (std::size_t i = 0; i < n; ++i) {
                double d = p[i] - t[i];
                acc += d * d;
            }
            break;
        case LossKind::smooth_l1:
            for (std::size_t i = 0; i < n; ++i) {
                double d = std::fabs(p[i] - t[i]);
                acc += d < 1.0 ? 0.5 * d * d : d - 0.5;
            }
            break;
        case LossKind::mape:
        case LossKind::osdf: {
            check_target_guard(t);
            double lambda = loss.kind == LossKind::mape ? 0.0 : loss.lambda;
            for (std::size_t i = 0; i < n; ++i) acc += pct_entry_value(p[i], t[i], lambda);
            break;
        }
    }
    return acc / static_cast<double>(n);
}

void loss_gradient(const Loss& loss, std::span<const double> p, std::span<const double> t,
                   std::span<double> dp) {
    check_lengths(p, t);
    if (dp.size() != p.size()) throw ShapeError("loss gradient output length mismatch");
    const std::size_t n = p.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    switch (loss.kind) {
        case LossKind::l1:
            for (std::size_t i = 0; i < n; ++i) dp[i] = sign(p[i] - t[i]) * inv_n;
            break;
        case LossKind::l2:
            for (std::size_t i = 0; i < n; ++i) dp[i] = 2.0 * (p[i] - t[i]) * inv_n;
            break;
        case LossKind::smooth_l1:
            for (std::size_t i = 0; i < n; ++i) {
                double d = p[i] - t[i];
                dp[i] = (std::fabs(d) < 1.0 ? d : sign(d)) * inv_n;
            }
            break;
        case LossKind::mape:
        case LossKind::osdf: {
            check_target_guard(t);
            double lambda = loss.kind == LossKind::mape ? 0.0 : loss.lambda;
            bool stop = loss.kind == LossKind::osdf && loss.osdf_stop_gradient;
            for (std::size_t i = 0; i < n; ++i) {
                dp[i] = pct_entry_grad(p[i], t[i], lambda, stop) * inv_n;
            }
            break;
        }
    }
}

} // namespace enercast
