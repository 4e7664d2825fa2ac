#include "enercast/metrics.hpp"

#include "enercast/errors.hpp"
#include "enercast/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace enercast {

Scenario Scenario::day_ahead(int stride_hours) {
    return Scenario{72, 48, 24, stride_hours, "day-ahead"};
}

Scenario Scenario::week_ahead(int stride_hours) {
    return Scenario{336, 48, 168, stride_hours, "week-ahead"};
}

void Scenario::validate() const {
    if (input_hours < 1 || gap_hours < 0 || horizon_hours < 1 || stride_hours < 1) {
        throw ValidationError("scenario window sizes must be positive (gap may be zero)");
    }
}

double mape_pct(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw ShapeError("mape: length mismatch");
    }
    double acc = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (std::fabs(actual[i]) < kZeroGuard) {
            throw DegenerateTargetError("mape: actual entry below zero guard");
        }
        acc += std::fabs((actual[i] - predicted[i]) / actual[i]);
    }
    return 100.0 * acc / static_cast<double>(actual.size());
}

MaeRmse mae_rmse(std::span<const double> actual, std::span<const double> predicted,
                 double normalization_constant) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw ShapeError("mae_rmse: length mismatch");
    }
    if (!(normalization_constant > 0.0)) {
        throw ValidationError("normalization constant must be positive");
    }
    double abs_sum = 0, sq_sum = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double e = actual[i] - predicted[i];
        abs_sum += std::fabs(e);
        sq_sum += e * e;
    }
    const double n = static_cast<double>(actual.size());
    MaeRmse m;
    m.mae_mw = abs_sum / n;
    m.rmse_mw = std::sqrt(sq_sum / n);
    m.mae_norm = m.mae_mw / normalization_constant;
    m.rmse_norm = m.rmse_mw / normalization_constant;
    return m;
}

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

} // namespace

nlohmann::json EvaluationReport::to_json() const {
    nlohmann::json j;
    j["scenario_id"] = scenario_id;
    j["strategy"] = strategy;
    j["mape_pct"] = mape_pct;
    j["mae_norm"] = mae_norm;
    j["mae_mw"] = mae_mw;
    j["rmse_norm"] = rmse_norm;
    j["rmse_mw"] = rmse_mw;
    j["n_windows"] = n_windows;
    j["seeds"] = seeds;
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& s : per_seed) {
        ps.push_back({{"seed", s.seed},
                      {"mape_pct", s.mape_pct},
                      {"mae_norm", s.mae_norm},
                      {"mae_mw", s.mae_mw},
                      {"rmse_norm", s.rmse_norm},
                      {"rmse_mw", s.rmse_mw}});
    }
    j["per_seed"] = std::move(ps);
    return j;
}

EvaluationReport EvaluationReport::from_json(const nlohmann::json& j) {
    EvaluationReport r;
    r.scenario_id = j.at("scenario_id").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.mape_pct = j.at("mape_pct").get<double>();
    r.mae_norm = j.at("mae_norm").get<double>();
    r.mae_mw = j.at("mae_mw").get<double>();
    r.rmse_norm = j.at("rmse_norm").get<double>();
    r.rmse_mw = j.at("rmse_mw").get<double>();
    r.n_windows = j.at("n_windows").get<std::size_t>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& s : j.at("per_seed")) {
        r.per_seed.push_back(SeedMetrics{s.at("seed").get<std::uint64_t>(),
                                         s.at("mape_pct").get<double>(),
                                         s.at("mae_norm").get<double>(),
                                         s.at("mae_mw").get<double>(),
                                         s.at("rmse_norm").get<double>(),
                                         s.at("rmse_mw").get<double>()});
    }
    return r;
}

double EvaluationReport::mape_seed_std() const {
    if (per_seed.size() < 2) return 0.0;
    double mean = 0;
    for (const auto& s : per_seed) mean += s.mape_pct;
    mean /= static_cast<double>(per_seed.size());
    double acc = 0;
    for (const auto& s : per_seed) {
        double d = s.mape_pct - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(per_seed.size() - 1));
}

std::string EvaluationReport::to_table() const {
    Comparison c;
    c.rows = {*this};
    return c.to_table();
}

EvaluationReport evaluate_samples(const StrategyArtifact& artifact,
                                  std::span<const FeatureSample> samples,
                                  const std::string& scenario_id, std::uint64_t seed) {
    if (samples.empty()) throw EmptyScenarioError("no samples to evaluate");
    std::vector<double> actual, predicted;
    for (const auto& s : samples) {
        auto p = predict(artifact, s);
        if (p.size() != s.target.size()) {
            throw ShapeError("prediction/target length mismatch during evaluation");
        }
        actual.insert(actual.end(), s.target.begin(), s.target.end());
        predicted.insert(predicted.end(), p.begin(), p.end());
    }
    EvaluationReport r;
    r.scenario_id = scenario_id;
    r.strategy = strategy_name(artifact.kind);
    r.mape_pct = mape_pct(actual, predicted);
    MaeRmse m = mae_rmse(actual, predicted, artifact.norm_constant_mw);
    r.mae_norm = m.mae_norm;
    r.mae_mw = m.mae_mw;
    r.rmse_norm = m.rmse_norm;
    r.rmse_mw = m.rmse_mw;
    r.n_windows = samples.size();
    r.seeds = {seed};
    r.per_seed = {SeedMetrics{seed, r.mape_pct, r.mae_norm, r.mae_mw, r.rmse_norm, r.rmse_mw}};
    return r;
}

EvaluationReport evaluate_scenario(const StrategyArtifact& artifact, const TimeSeries& load,
                                   std::span<const WeatherData> weather, const Scenario& scenario,
                                   std::uint64_t seed) {
    scenario.validate();
    const std::size_t n = window_count(load.size(), scenario.input_hours, scenario.gap_hours,
                                       scenario.horizon_hours, scenario.stride_hours);
    if (n == 0) {
        throw EmptyScenarioError("test span of " + std::to_string(load.size()) +
                                 " hours fits no " + scenario.id + " window");
    }
    std::vector<FeatureSample> samples;
    samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        HourIndex t0 = load.start_hour + static_cast<HourIndex>(k) *
                                             static_cast<HourIndex>(scenario.stride_hours);
        samples.push_back(build_window(load, weather, scenario.input_hours, scenario.gap_hours,
                                       scenario.horizon_hours, t0));
    }
    return evaluate_samples(artifact, samples, scenario.id, seed);
}

EvaluationReport merge_seed_reports(std::span<const EvaluationReport> reports) {
    if (reports.empty()) throw ValidationError("no reports to merge");
    EvaluationReport out;
    out.scenario_id = reports.front().scenario_id;
    out.strategy = reports.front().strategy;
    out.n_windows = reports.front().n_windows;
    for (const auto& r : reports) {
        if (r.scenario_id != out.scenario_id || r.strategy != out.strategy) {
            throw ValidationError("cannot merge reports for different strategies/scenarios");
        }
        out.seeds.insert(out.seeds.end(), r.seeds.begin(), r.seeds.end());
        out.per_seed.insert(out.per_seed.end(), r.per_seed.begin(), r.per_seed.end());
    }
    const double n = static_cast<double>(out.per_seed.size());
    for (const auto& s : out.per_seed) {
        out.mape_pct += s.mape_pct / n;
        out.mae_norm += s.mae_norm / n;
        out.mae_mw += s.mae_mw / n;
        out.rmse_norm += s.rmse_norm / n;
        out.rmse_mw += s.rmse_mw / n;
    }
    return out;
}

Comparison compare(std::span<const StrategyArtifact> artifacts,
                   std::span<const FeatureSample> test_samples, const std::string& scenario_id) {
    if (artifacts.size() < 2) throw ValidationError("compare needs at least 2 artifacts");
    const std::string& schema = artifacts.front().schema_id;
    for (const auto& a : artifacts) {
        if (a.schema_id != schema) {
            throw SchemaError("compare: artifacts use different schemas ('" + schema + "' vs '" +
                              a.schema_id + "')");
        }
    }
    std::vector<EvaluationReport> rows;
    rows.reserve(artifacts.size());
    for (const auto& a : artifacts) {
        rows.push_back(evaluate_samples(a, test_samples, scenario_id));
    }
    return compare_reports(std::move(rows));
}

Comparison compare_reports(std::vector<EvaluationReport> rows) {
    if (rows.empty()) throw ValidationError("compare needs at least one row");
    Comparison c;
    c.rows = std::move(rows);
    auto argmin = [&](auto metric) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.rows.size(); ++i) {
            if (metric(c.rows[i]) < metric(c.rows[best])) best = i;
        }
        return best;
    };
    c.best_mape = argmin([](const EvaluationReport& r) { return r.mape_pct; });
    c.best_mae = argmin([](const EvaluationReport& r) { return r.mae_mw; });
    c.best_rmse = argmin([](const EvaluationReport& r) { return r.rmse_mw; });
    return c;
}

nlohmann::json Comparison::to_json() const {
    nlohmann::json j;
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rows) rs.push_back(r.to_json());
    j["reports"] = std::move(rs);
    j["best_mape"] = best_mape;
    j["best_mae"] = best_mae;
    j["best_rmse"] = best_rmse;
    return j;
}

std::string Comparison::to_table() const {
    // One row per strategy; multi-seed rows show "mean ± std" for MAPE.
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"strategy", "scenario", "MAPE (%)", "MAE (nrm. / MW)", "RMSE (nrm. / MW)",
                     "windows", "seeds"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::string mape = fmt("%.3f", r.mape_pct);
        if (r.per_seed.size() > 1) mape += " ± " + fmt("%.3f", r.mape_seed_std());
        if (i == best_mape && rows.size() > 1) mape += " *";
        std::string mae = fmt("%.3f", r.mae_norm) + " / " + fmt("%.2f", r.mae_mw);
        if (i == best_mae && rows.size() > 1) mae += " *";
        std::string rmse = fmt("%.3f", r.rmse_norm) + " / " + fmt("%.2f", r.rmse_mw);
        if (i == best_rmse && rows.size() > 1) rmse += " *";
        cells.push_back({r.strategy, r.scenario_id, mape, mae, rmse,
                         std::to_string(r.n_windows), std::to_string(r.seeds.size())});
    }
    // Column widths in display columns (UTF-8 continuation bytes ignored).
    auto display_width = [](const std::string& s) {
        std::size_t w = 0;
        for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
        return w;
    };
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], display_width(row[c]));
        }
    }
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - display_width(row[c]) + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

void write_plot_csv(const StrategyArtifact& artifact, std::span<const FeatureSample> samples,
                    const std::string& path) {
    std::string out = "timestamp,actual,predicted\n";
    for (const auto& s : samples) {
        auto p = predict(artifact, s);
        for (std::size_t i = 0; i < s.target.size(); ++i) {
            out += format_utc_hour(s.target_start_hour + static_cast<HourIndex>(i));
            out += ',';
            out += format_double(s.target[i]);
            out += ',';
            out += format_double(p[i]);
            out += '\n';
        }
    }
    write_file_atomic(path, out);
}

} // namespace enercast
