#include "enercast/errors.hpp"
#include "enercast/features.hpp"
#include "enercast/metrics.hpp"
#include "enercast/rng.hpp"
#include "enercast/synth.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>

using namespace enercast;

namespace {

StrategyArtifact constant_artifact(std::size_t in_dim, std::size_t out_dim, double value,
                                   const std::string& schema) {
    StrategyArtifact a;
    a.kind = StrategyKind::baseline;
    a.primary = MlpModel::zeros({in_dim, out_dim});
    for (double& b : a.primary.biases()[0]) b = value;
    std::vector<std::vector<double>> rows(2, std::vector<double>(in_dim, 1.0));
    rows[1].assign(in_dim, 2.0);
    a.normalizer = Normalizer::fit(rows);
    a.schema_id = schema;
    a.norm_constant_mw = 100.0;
    return a;
}

} // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("mape spot values") {
    CHECK(mape_pct(std::vector<double>{100.0}, std::vector<double>{100.0}) == 0.0);
    CHECK(mape_pct(std::vector<double>{100.0}, std::vector<double>{90.0}) ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK(mape_pct(std::vector<double>{100.0, 200.0}, std::vector<double>{110.0, 180.0}) ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(mape_pct(std::vector<double>{0.0}, std::vector<double>{1.0}),
                    DegenerateTargetError);
}

TEST_CASE("mae and rmse spot values") {
    auto perfect = mae_rmse(std::vector<double>{5.0, 6.0}, std::vector<double>{5.0, 6.0}, 10.0);
    CHECK(perfect.mae_mw == 0.0);
    CHECK(perfect.rmse_mw == 0.0);
    CHECK(perfect.mae_norm == 0.0);
    CHECK(perfect.rmse_norm == 0.0);

    auto symmetric = mae_rmse(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 2.0}, 10.0);
    CHECK(symmetric.mae_mw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(symmetric.rmse_mw == doctest::Approx(1.0).epsilon(1e-12));

    auto uneven = mae_rmse(std::vector<double>{0.0, 0.0}, std::vector<double>{0.0, 2.0}, 10.0);
    CHECK(uneven.mae_mw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(uneven.rmse_mw == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(uneven.mae_norm == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(mae_rmse(std::vector<double>{1.0}, std::vector<double>{1.0}, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(mae_rmse(std::vector<double>{1.0}, std::vector<double>{1.0}, -3.0),
                    ValidationError);
}

TEST_CASE("metrics match brute-force loop oracles on random data") {
    Rng rng(3);
    std::vector<double> a(1000), p(1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform(10.0, 500.0);
        p[i] = a[i] + rng.uniform(-20.0, 20.0);
    }
    double sum_pct = 0, sum_abs = 0, sum_sq = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum_pct += std::fabs((a[i] - p[i]) / a[i]);
        sum_abs += std::fabs(a[i] - p[i]);
        sum_sq += (a[i] - p[i]) * (a[i] - p[i]);
    }
    double n = double(a.size());
    CHECK(std::fabs(mape_pct(a, p) - 100.0 * sum_pct / n) < 1e-12);
    auto m = mae_rmse(a, p, 500.0);
    CHECK(std::fabs(m.mae_mw - sum_abs / n) < 1e-12);
    CHECK(std::fabs(m.rmse_mw - std::sqrt(sum_sq / n)) < 1e-12);
    CHECK(std::fabs(m.mae_norm - (sum_abs / n) / 500.0) < 1e-12);
}

TEST_CASE("rmse dominates mae; equality iff equal magnitudes") {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(32), p(32);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = rng.uniform(50.0, 150.0);
            p[i] = a[i] + rng.uniform(-10.0, 10.0);
        }
        auto m = mae_rmse(a, p, 100.0);
        CHECK(m.rmse_mw >= m.mae_mw - 1e-12);
    }
    std::vector<double> a(8, 100.0), p(8);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = 100.0 + (i % 2 == 0 ? 3.0 : -3.0);
    auto equal_mag = mae_rmse(a, p, 100.0);
    CHECK(equal_mag.rmse_mw == doctest::Approx(equal_mag.mae_mw).epsilon(1e-12));
}

TEST_CASE("mape is scale invariant") {
    Rng rng(11);
    std::vector<double> a(64), p(64);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform(10.0, 100.0);
        p[i] = a[i] * rng.uniform(0.8, 1.2);
    }
    double base = mape_pct(a, p);
    for (double c : {0.01, 3.0, 1234.5}) {
        std::vector<double> ca(64), cp(64);
        for (std::size_t i = 0; i < a.size(); ++i) {
            ca[i] = c * a[i];
            cp[i] = c * p[i];
        }
        CHECK(std::fabs(mape_pct(ca, cp) - base) < 1e-9);
    }
}

TEST_CASE("scenario evaluation window counts and constant-series zeros") {
    SynthConfig config;
    config.n_hours = 1000;
    config.seed = 1;
    config.daily_amp = 0;
    config.weekly_amp = 0;
    config.annual_amp = 0;
    config.noise_std = 0;
    config.temp_coupling = 0;
    config.holiday_drop = 0;
    auto data = generate(config); // constant series at base_mw
    auto scenario = Scenario::day_ahead(1);
    auto artifact = constant_artifact(72u + 4u * 24u, 24, config.base_mw,
                                      window_schema_id(72, 48, 24, 1));
    auto report = evaluate_scenario(artifact, data.load, data.weather, scenario);
    CHECK(report.n_windows == 857);
    CHECK(report.mape_pct == 0.0);
    CHECK(report.mae_mw == 0.0);
    CHECK(report.rmse_mw == 0.0);
}

TEST_CASE("scenario evaluation equals a flat loop oracle") {
    SynthConfig config;
    config.n_hours = 600;
    config.seed = 5;
    config.noise_std = 1.0;
    auto data = generate(config);
    auto scenario = Scenario::day_ahead(24);
    auto artifact = constant_artifact(72u + 4u * 24u, 24, 100.0, window_schema_id(72, 48, 24, 1));
    auto report = evaluate_scenario(artifact, data.load, data.weather, scenario);

    // Oracle: explicit loop over the same windows, pooled entries.
    std::size_t span = 72 + 48 + 24;
    std::size_t n_windows = (data.load.size() - span) / 24 + 1;
    double sum_pct = 0, sum_abs = 0, sum_sq = 0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < n_windows; ++k) {
        std::size_t t0 = k * 24;
        for (int h = 0; h < 24; ++h) {
            double actual = data.load.at(t0 + 72 + 48 + static_cast<std::size_t>(h));
            double predicted = 100.0;
            sum_pct += std::fabs((actual - predicted) / actual);
            sum_abs += std::fabs(actual - predicted);
            sum_sq += (actual - predicted) * (actual - predicted);
            ++count;
        }
    }
    CHECK(report.n_windows == n_windows);
    CHECK(std::fabs(report.mape_pct - 100.0 * sum_pct / double(count)) < 1e-10);
    CHECK(std::fabs(report.mae_mw - sum_abs / double(count)) < 1e-10);
    CHECK(std::fabs(report.rmse_mw - std::sqrt(sum_sq / double(count))) < 1e-10);
}

TEST_CASE("too short a span raises an empty-scenario error") {
    SynthConfig config;
    config.n_hours = 100;
    auto data = generate(config);
    auto artifact = constant_artifact(72u + 4u * 24u, 24, 100.0, window_schema_id(72, 48, 24, 1));
    CHECK_THROWS_AS(evaluate_scenario(artifact, data.load, data.weather, Scenario::day_ahead()),
                    EmptyScenarioError);
}

TEST_CASE("seed merging averages the per-seed metrics") {
    EvaluationReport a;
    a.scenario_id = "day-ahead";
    a.strategy = "baseline";
    a.mape_pct = 4.0;
    a.mae_mw = 2.0;
    a.n_windows = 10;
    a.seeds = {1};
    a.per_seed = {SeedMetrics{1, 4.0, 0.02, 2.0, 0.03, 3.0}};
    EvaluationReport b = a;
    b.seeds = {2};
    b.per_seed = {SeedMetrics{2, 6.0, 0.04, 4.0, 0.05, 5.0}};
    b.mape_pct = 6.0;
    std::vector<EvaluationReport> reports{a, b};
    auto merged = merge_seed_reports(reports);
    CHECK(merged.mape_pct == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(merged.mae_mw == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(merged.seeds.size() == 2);
    CHECK(merged.per_seed.size() == 2);
    CHECK(merged.mape_seed_std() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    EvaluationReport other = b;
    other.strategy = "afore";
    std::vector<EvaluationReport> bad{a, other};
    CHECK_THROWS_AS(merge_seed_reports(bad), ValidationError);
}

TEST_CASE("comparison marks winners and formats mean and spread") {
    Rng rng(13);
    std::vector<FeatureSample> samples(30);
    for (auto& s : samples) {
        s.schema_id = "unit/1";
        s.input = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        s.target = {100.0 + 10.0 * s.input[0]};
    }
    auto good = constant_artifact(2, 1, 100.0, "unit/1");
    auto same = good;
    auto corrupted = good;
    corrupted.primary.biases()[0][0] = 260.0;

    std::vector<StrategyArtifact> artifacts{good, same, corrupted};
    auto comparison = compare(artifacts, samples, "unit");
    REQUIRE(comparison.rows.size() == 3);
    CHECK(comparison.rows[0].mape_pct == comparison.rows[1].mape_pct);
    CHECK(comparison.best_mape != 2);
    CHECK(comparison.best_mae != 2);
    CHECK(comparison.best_rmse != 2);
    CHECK(comparison.rows[2].mape_pct > comparison.rows[0].mape_pct);

    auto table = comparison.to_table();
    CHECK(table.find("MAPE") != std::string::npos);
    CHECK(table.find("*") != std::string::npos);

    // Multi-seed row renders as "mean ± std" with three decimals.
    EvaluationReport r;
    r.scenario_id = "day-ahead";
    r.strategy = "baseline";
    r.per_seed = {SeedMetrics{0, 3.509, 0, 0, 0, 0}, SeedMetrics{1, 3.609, 0, 0, 0, 0}};
    r.seeds = {0, 1};
    r.mape_pct = 3.559;
    r.n_windows = 5;
    auto merged_table = compare_reports({r}).to_table();
    CHECK(merged_table.find("3.559 ± 0.071") != std::string::npos);
}

TEST_CASE("schema mismatch across compared artifacts is rejected") {
    auto a = constant_artifact(2, 1, 10.0, "unit/1");
    auto b = constant_artifact(2, 1, 10.0, "unit/2");
    std::vector<StrategyArtifact> artifacts{a, b};
    std::vector<FeatureSample> samples(1);
    samples[0].schema_id = "unit/1";
    samples[0].input = {0.0, 0.0};
    samples[0].target = {10.0};
    CHECK_THROWS_AS(compare(artifacts, samples, "unit"), SchemaError);
}

TEST_CASE("plot CSV holds one row per target hour") {
    testutil::TempDir dir("plot");
    auto artifact = constant_artifact(2, 2, 50.0, "unit/1");
    std::vector<FeatureSample> samples(2);
    for (auto& s : samples) {
        s.schema_id = "unit/1";
        s.input = {1.0, 2.0};
        s.target = {48.0, 52.0};
        s.target_start_hour = hour_index_of(Date{2015, 1, 1});
    }
    write_plot_csv(artifact, samples, dir.file("plot.csv"));
    auto content = testutil::read_file(dir.file("plot.csv"));
    CHECK(content.find("timestamp,actual,predicted") == 0);
    CHECK(content.find("2015-01-01T00:00:00Z,48,50") != std::string::npos);
    CHECK(content.find("2015-01-01T01:00:00Z,52,50") != std::string::npos);
}

TEST_SUITE_END();
