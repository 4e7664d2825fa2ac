#ifndef ENERCAST_METRICS_HPP
#define ENERCAST_METRICS_HPP

#include "enercast/csv.hpp"
#include "enercast/sample.hpp"
#include "enercast/series.hpp"
#include "enercast/strategies.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace enercast {

/// Sliding-window evaluation setup (sizes in hours).
struct Scenario {
    int input_hours = 72;
    int gap_hours = 48;
    int horizon_hours = 24;
    int stride_hours = 24;
    std::string id = "day-ahead";

    static Scenario day_ahead(int stride_hours = 24);
    static Scenario week_ahead(int stride_hours = 168);

    void validate() const;
};

/// Pooled percent MAPE over all entries: 100/n * sum |(a - p) / a|.
/// Every actual entry must clear the zero guard.
double mape_pct(std::span<const double> actual, std::span<const double> predicted);

struct MaeRmse {
    double mae_norm = 0;
    double mae_mw = 0;
    double rmse_norm = 0;
    double rmse_mw = 0;
};

/// MAE/RMSE in physical units and divided by a positive normalization
/// constant (this toolkit uses the training-split maximum load).
MaeRmse mae_rmse(std::span<const double> actual, std::span<const double> predicted,
                 double normalization_constant);

struct SeedMetrics {
    std::uint64_t seed = 0;
    double mape_pct = 0;
    double mae_norm = 0;
    double mae_mw = 0;
    double rmse_norm = 0;
    double rmse_mw = 0;
};

/// Metrics of one strategy on one scenario. Multi-seed reports carry
/// the per-seed values; the headline numbers are then seed means.
struct EvaluationReport {
    std::string scenario_id;
    std::string strategy;
    double mape_pct = 0;
    double mae_norm = 0;
    double mae_mw = 0;
    double rmse_norm = 0;
    double rmse_mw = 0;
    std::size_t n_windows = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<SeedMetrics> per_seed;

    nlohmann::json to_json() const;
    static EvaluationReport from_json(const nlohmann::json& j);
    std::string to_table() const;

    /// Sample standard deviation of per-seed MAPE (0 for single runs).
    double mape_seed_std() const;
};

/// Pools predictions over a prepared sample set (any schema).
EvaluationReport evaluate_samples(const StrategyArtifact& artifact,
                                  std::span<const FeatureSample> samples,
                                  const std::string& scenario_id, std::uint64_t seed = 0);

/// Slides scenario windows over the test span at the scenario stride and
/// pools the metrics. Throws EmptyScenarioError when no window fits.
EvaluationReport evaluate_scenario(const StrategyArtifact& artifact, const TimeSeries& load,
                                   std::span<const WeatherData> weather, const Scenario& scenario,
                                   std::uint64_t seed = 0);

/// Seed-mean report from per-seed reports of the same strategy/scenario.
EvaluationReport merge_seed_reports(std::span<const EvaluationReport> reports);

struct Comparison {
    std::vector<EvaluationReport> rows;
    std::size_t best_mape = 0; // row indices
    std::size_t best_mae = 0;
    std::size_t best_rmse = 0;

    nlohmann::json to_json() const;
    std::string to_table() const;
};

/// Evaluates several artifacts on the same test samples and marks the
/// winner per metric. Artifacts must share the sample schema.
Comparison compare(std::span<const StrategyArtifact> artifacts,
                   std::span<const FeatureSample> test_samples, const std::string& scenario_id);

/// Comparison of already-computed rows (e.g. multi-seed merged reports).
Comparison compare_reports(std::vector<EvaluationReport> rows);

/// Writes per-window (timestamp, actual, predicted) rows for plotting.
void write_plot_csv(const StrategyArtifact& artifact, std::span<const FeatureSample> samples,
                    const std::string& path);

} // namespace enercast

#endif // ENERCAST_METRICS_HPP
