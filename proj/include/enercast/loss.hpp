#ifndef ENERCAST_LOSS_HPP
#define ENERCAST_LOSS_HPP

#include <span>
#include <string>

namespace enercast {

enum class LossKind { l1, l2, smooth_l1, mape, osdf };

std::string loss_kind_name(LossKind k);

/**
 * Training losses. All are means over the entries of one target vector:
 *
 *   l1         |p - t|
 *   l2         (p - t)^2
 *   smooth_l1  0.5 d^2 when |d| < 1, |d| - 0.5 otherwise   (d = p - t)
 *   mape       |t - p| / |t|
 *   osdf       |t - (1-lambda) p| / |t + lambda p|
 *
 * osdf is the self-distilled percentage error against the soft target
 * t + lambda * p formed from the model's own current prediction; mape
 * and osdf share one kernel, and osdf with lambda = 0 IS mape (same
 * code path, so the reduction holds bit for bit). The osdf gradient is
 * taken through the prediction in both numerator and denominator by
 * default; with stop_gradient the soft target is held constant per step.
 *
 * mape/osdf require every target entry to clear the kZeroGuard magnitude;
 * violations raise DegenerateTargetError.
 */
struct Loss {
    LossKind kind = LossKind::l2;
    double lambda = 0.0;
    bool osdf_stop_gradient = false;

    static Loss l1() { return {LossKind::l1, 0.0, false}; }
    static Loss l2() { return {LossKind::l2, 0.0, false}; }
    static Loss smooth_l1() { return {LossKind::smooth_l1, 0.0, false}; }
    static Loss mape() { return {LossKind::mape, 0.0, false}; }
    /// lambda in [0, 1); 0 degenerates to mape. Strategy-level training
    /// additionally requires lambda > 0.
    static Loss osdf(double lambda, bool stop_gradient = false);

    std::string name() const;
};

inline constexpr double kZeroGuard = 1e-8;

/// Mean entry loss for one (prediction, target) pair.
double loss_value(const Loss& loss, std::span<const double> prediction,
                  std::span<const double> target);

/// Derivative of loss_value with respect to each prediction entry
/// (the 1/n of the entry mean is included). Output must have the same
/// length as prediction.
void loss_gradient(const Loss& loss, std::span<const double> prediction,
                   std::span<const double> target, std::span<double> d_prediction);

} // namespace enercast

#endif // ENERCAST_LOSS_HPP
