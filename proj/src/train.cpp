#include "enercast/train.hpp"

#include "enercast/errors.hpp"
#include "enercast/rng.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace enercast {

void TrainConfig::validate() const {
    if (epochs < 0) throw ValidationError("epochs must be >= 0");
    if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw ValidationError("learning_rate must be > 0");
    if (early_stop_patience && *early_stop_patience < 1) {
        throw ValidationError("early_stop_patience must be >= 1");
    }
}

namespace {

void check_sample_dims(const MlpModel& model, std::span<const FeatureSample> samples,
                       const char* what) {
    for (const auto& s : samples) {
        if (s.input.size() != model.input_dim() || s.target.size() != model.output_dim()) {
            throw ShapeError(std::string(what) + ": sample dims (" + std::to_string(s.input.size()) +
                             " -> " + std::to_string(s.target.size()) + ") do not match model (" +
                             std::to_string(model.input_dim()) + " -> " +
                             std::to_string(model.output_dim()) + ")");
        }
    }
}

// Pooled percent MAPE used as the early-stopping monitor. Returns NaN
// when any target entry violates the zero guard instead of throwing, so
// training on near-zero targets (e.g. anchored offsets) can fall back
// to the validation loss.
double monitor_mape_pct(const MlpModel& model, std::span<const FeatureSample> samples) {
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& s : samples) {
        auto pred = model.forward(s.input);
        for (std::size_t i = 0; i < pred.size(); ++i) {
            double t = s.target[i];
            if (std::fabs(t) < kZeroGuard) return std::numeric_limits<double>::quiet_NaN();
            acc += std::fabs((t - pred[i]) / t);
            ++count;
        }
    }
    if (count == 0) return std::numeric_limits<double>::quiet_NaN();
    return 100.0 * acc / static_cast<double>(count);
}

// Accumulates one sample's parameter gradients, scaled by `scale`.
void backprop_sample(const MlpModel& model, const FeatureSample& sample, const Loss& loss,
                     double scale, Gradients& out) {
    const auto acts = model.forward_trace(sample.input);
    const std::size_t n_layers = model.n_weight_layers();

    std::vector<double> delta(model.output_dim());
    loss_gradient(loss, acts.back(), sample.target, delta);

    for (std::size_t l = n_layers; l-- > 0;) {
        const Matrix& w = model.weights()[l];
        const auto& a_in = acts[l];
        Matrix& dw = out.weights[l];
        auto& db = out.biases[l];
        for (std::size_t r = 0; r < w.rows; ++r) {
            const double d = delta[r] * scale;
            db[r] += d;
            double* dwr = &dw.data[r * w.cols];
            for (std::size_t c = 0; c < w.cols; ++c) dwr[c] += d * a_in[c];
        }
        if (l == 0) break;
        std::vector<double> prev(w.cols, 0.0);
        for (std::size_t r = 0; r < w.rows; ++r) {
            const double d = delta[r];
            const double* wr = &w.data[r * w.cols];
            for (std::size_t c = 0; c < w.cols; ++c) prev[c] += wr[c] * d;
        }
        // ReLU derivative from the post-activation: max(0, z) > 0 iff z > 0.
        for (std::size_t c = 0; c < w.cols; ++c) {
            if (a_in[c] <= 0.0) prev[c] = 0.0;
        }
        delta = std::move(prev);
    }
}

Gradients zero_gradients(const MlpModel& model) {
    Gradients g;
    for (std::size_t l = 0; l < model.n_weight_layers(); ++l) {
        const Matrix& w = model.weights()[l];
        g.weights.emplace_back(w.rows, w.cols);
        g.biases.emplace_back(w.rows, 0.0);
    }
    return g;
}

struct AdamState {
    Gradients m;
    Gradients v;
    long step = 0;
};

void apply_update(MlpModel& model, const Gradients& grad, const TrainConfig& cfg,
                  AdamState& adam) {
    if (cfg.optimizer == OptimizerKind::sgd) {
        for (std::size_t l = 0; l < model.n_weight_layers(); ++l) {
            auto& w = model.weights()[l].data;
            const auto& gw = grad.weights[l].data;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * gw[i];
            auto& b = model.biases()[l];
            const auto& gb = grad.biases[l];
            for (std::size_t i = 0; i < b.size(); ++i) b[i] -= cfg.learning_rate * gb[i];
        }
        return;
    }
    ++adam.step;
    const double b1 = cfg.adam.beta1;
    const double b2 = cfg.adam.beta2;
    const double corr1 = 1.0 - std::pow(b1, static_cast<double>(adam.step));
    const double corr2 = 1.0 - std::pow(b2, static_cast<double>(adam.step));
    auto update = [&](std::vector<double>& p, const std::vector<double>& g, std::vector<double>& m,
                      std::vector<double>& v) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            double mhat = m[i] / corr1;
            double vhat = v[i] / corr2;
            p[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam.eps);
        }
    };
    for (std::size_t l = 0; l < model.n_weight_layers(); ++l) {
        update(model.weights()[l].data, grad.weights[l].data, adam.m.weights[l].data,
               adam.v.weights[l].data);
        update(model.biases()[l], grad.biases[l], adam.m.biases[l], adam.v.biases[l]);
    }
}

} // namespace

double dataset_loss(const MlpModel& model, std::span<const FeatureSample> samples,
                    const Loss& loss) {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    double acc = 0.0;
    for (const auto& s : samples) {
        acc += loss_value(loss, model.forward(s.input), s.target);
    }
    return acc / static_cast<double>(samples.size());
}

Gradients gradients(const MlpModel& model, std::span<const FeatureSample> batch,
                    const Loss& loss) {
    if (batch.empty()) throw ValidationError("gradient of an empty batch");
    check_sample_dims(model, batch, "gradients");
    Gradients g = zero_gradients(model);
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto& s : batch) backprop_sample(model, s, loss, scale, g);
    return g;
}

TrainResult train(const MlpModel& init, std::span<const FeatureSample> train_set,
                  std::span<const FeatureSample> val_set, const Loss& loss,
                  const TrainConfig& cfg) {
    cfg.validate();
    init.check_invariants();
    if (train_set.empty()) throw ValidationError("training set is empty");
    check_sample_dims(init, train_set, "train");
    check_sample_dims(init, val_set, "validation");

    TrainResult result;
    result.model = init;
    if (cfg.epochs == 0) return result;

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    AdamState adam;
    adam.m = zero_gradients(init);
    adam.v = zero_gradients(init);

    MlpModel best_model = result.model;
    double best_monitor = std::numeric_limits<double>::infinity();
    int best_epoch = -1;

    std::vector<FeatureSample> batch;
    const auto batch_size = static_cast<std::size_t>(cfg.batch_size);

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t pos = 0; pos < order.size(); pos += batch_size) {
            batch.clear();
            for (std::size_t i = pos; i < std::min(pos + batch_size, order.size()); ++i) {
                batch.push_back(train_set[order[i]]);
            }
            Gradients g = gradients(result.model, batch, loss);
            double batch_loss = dataset_loss(result.model, batch, loss);
            if (!std::isfinite(batch_loss)) {
                throw DivergedTrainingError(
                    "training diverged (non-finite loss) at epoch " + std::to_string(epoch), epoch);
            }
            apply_update(result.model, g, cfg, adam);
        }

        EpochStats stats;
        stats.train_loss = dataset_loss(result.model, train_set, loss);
        stats.val_loss = dataset_loss(result.model, val_set, loss);
        stats.val_mape_pct = monitor_mape_pct(result.model, val_set);
        if (!std::isfinite(stats.train_loss)) {
            throw DivergedTrainingError(
                "training diverged (non-finite loss) at epoch " + std::to_string(epoch), epoch);
        }
        result.history.push_back(stats);

        double monitor = stats.val_mape_pct;
        if (!std::isfinite(monitor)) monitor = stats.val_loss;
        if (!std::isfinite(monitor)) monitor = stats.train_loss;
        if (monitor < best_monitor) {
            best_monitor = monitor;
            best_epoch = epoch;
            if (cfg.early_stop_patience) best_model = result.model;
        }
        if (cfg.early_stop_patience && epoch - best_epoch >= *cfg.early_stop_patience) {
            break;
        }
    }

    result.best_epoch = best_epoch;
    if (cfg.early_stop_patience && best_epoch > 0) {
        result.model = std::move(best_model);
    }
    return result;
}

} // namespace enercast
