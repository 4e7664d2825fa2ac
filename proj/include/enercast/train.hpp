#ifndef ENERCAST_TRAIN_HPP
#define ENERCAST_TRAIN_HPP

#include "enercast/loss.hpp"
#include "enercast/mlp.hpp"
#include "enercast/sample.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace enercast {

enum class OptimizerKind { sgd, adam };

struct AdamParams {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct TrainConfig {
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 1e-3;
    OptimizerKind optimizer = OptimizerKind::adam;
    AdamParams adam;
    std::uint64_t seed = 0;
    /// Patience in epochs on the validation monitor (validation MAPE %,
    /// falling back to validation loss when MAPE is undefined for the
    /// targets at hand). Training returns the best-monitor weights.
    std::optional<int> early_stop_patience;

    void validate() const;
};

/// Per-parameter gradients, shaped like the model.
struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

struct EpochStats {
    double train_loss = 0.0;
    double val_loss = 0.0;
    /// NaN when the validation set is empty or its targets violate the
    /// MAPE zero guard.
    double val_mape_pct = 0.0;
};

struct TrainResult {
    MlpModel model;
    std::vector<EpochStats> history;
    int best_epoch = -1; // -1 when no epochs ran
};

/// Mean loss of a model over a sample set.
double dataset_loss(const MlpModel& model, std::span<const FeatureSample> samples,
                    const Loss& loss);

/// Exact analytical gradient of the mean batch loss (backpropagation).
Gradients gradients(const MlpModel& model, std::span<const FeatureSample> batch,
                    const Loss& loss);

/**
 * Deterministic minibatch training. The sample order is reshuffled each
 * epoch from cfg.seed; identical inputs give bit-identical weight
 * trajectories. epochs = 0 returns the initial model unchanged. A
 * non-finite batch loss raises DivergedTrainingError naming the epoch.
 */
TrainResult train(const MlpModel& init, std::span<const FeatureSample> train_set,
                  std::span<const FeatureSample> val_set, const Loss& loss,
                  const TrainConfig& cfg);

} // namespace enercast

#endif // ENERCAST_TRAIN_HPP
