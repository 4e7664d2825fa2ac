#ifndef ENERCAST_STRATEGIES_HPP
#define ENERCAST_STRATEGIES_HPP

#include "enercast/calendar.hpp"
#include "enercast/normalize.hpp"
#include "enercast/sample.hpp"
#include "enercast/series.hpp"
#include "enercast/train.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace enercast {

enum class StrategyKind { baseline, afore, reself, osdf };

std::string strategy_name(StrategyKind k);
StrategyKind strategy_from_name(const std::string& name);

/// Offset encoding against the week-prior anchor: pct = load / anchor - 1.
/// Anchor entries must be strictly positive (loads in MW).
std::vector<double> afore_encode(std::span<const double> load, std::span<const double> anchor);

/// Inverse mapping back to load space: load = anchor * (pct + 1).
std::vector<double> afore_decode(std::span<const double> pct, std::span<const double> anchor);

/// Architecture and training settings for one model stage.
struct StageConfig {
    std::vector<std::size_t> hidden_dims{64};
    TrainConfig train;
};

/**
 * A trained forecasting strategy with everything prediction needs:
 * the model(s), the input normalizer fitted on the training split, the
 * feature schema it expects, and the physical normalization constant
 * (max training-split load) used for "nrm." metric values.
 *
 * Predictions are always emitted in physical units; target encodings
 * (anchored offsets, residual composition) are internal.
 */
struct StrategyArtifact {
    StrategyKind kind = StrategyKind::baseline;
    MlpModel primary;
    std::optional<MlpModel> secondary;           // reself only
    std::optional<double> lambda;                // osdf only, in (0, 1)
    std::optional<std::vector<std::size_t>> primary_input_indices; // reself stage-1 view
    Normalizer normalizer;
    std::string schema_id;
    double norm_constant_mw = 1.0;

    void validate() const;

    nlohmann::json to_json() const;
    static StrategyArtifact from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static StrategyArtifact load(const std::string& path);

    static constexpr int kFormatVersion = 1;
};

StrategyArtifact train_baseline(std::span<const FeatureSample> train_set,
                                std::span<const FeatureSample> val_set, const StageConfig& cfg,
                                const Loss& loss);

/// Trains on anchored offset targets; every sample must carry a strictly
/// positive anchor. Predictions decode back through the sample's anchor.
StrategyArtifact train_afore(std::span<const FeatureSample> train_set,
                             std::span<const FeatureSample> val_set, const StageConfig& cfg,
                             const Loss& loss);

struct ReselfOptions {
    /// Input coordinates visible to the stage-1 model (default: all).
    /// The residual model always sees the full input.
    std::optional<std::vector<std::size_t>> primary_input_indices;
};

/// Two-stage residual learning: stage 1 fits the raw targets, stage 2
/// fits the stage-1 residuals on the training split; the prediction is
/// the sum of both models.
StrategyArtifact train_reself(std::span<const FeatureSample> train_set,
                              std::span<const FeatureSample> val_set, const StageConfig& stage1,
                              const StageConfig& stage2, const Loss& loss,
                              const ReselfOptions& options = {});

/// Online self-distillation: trains with the osdf loss, whose soft
/// target g + lambda * phi(x) is recomputed from the current weights at
/// every step (no teacher pre-training). lambda must lie in (0, 1) and
/// all targets must be strictly positive.
StrategyArtifact train_osdf(std::span<const FeatureSample> train_set,
                            std::span<const FeatureSample> val_set, const StageConfig& cfg,
                            double lambda, bool stop_gradient = false);

/// Physical-unit prediction for one sample (MW).
std::vector<double> predict(const StrategyArtifact& artifact, const FeatureSample& sample);

struct GapFillContext {
    const TimeSeries* temperature = nullptr;
    const CalendarInfo* calendar = nullptr;
};

/**
 * Realistic-scenario gap filling: the final gap_days (4-10) of the load
 * series are treated as the information gap; any masked hour in that
 * span is replaced by a day-ahead prediction. Days are filled
 * chronologically and each filled day becomes input history for the
 * next, so the fill never reads at or past the day being predicted.
 */
TimeSeries gap_fill(const TimeSeries& load, int gap_days, const StrategyArtifact& artifact,
                    const GapFillContext& context);

} // namespace enercast

#endif // ENERCAST_STRATEGIES_HPP
