#include "enercast/strategies.hpp"

#include "enercast/csv.hpp"
#include "enercast/errors.hpp"
#include "enercast/features.hpp"
#include "enercast/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace enercast {

std::string strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::baseline: return "baseline";
        case StrategyKind::afore: return "afore";
        case StrategyKind::reself: return "reself";
        case StrategyKind::osdf: return "osdf";
    }
    return "unknown";
}

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "baseline") return StrategyKind::baseline;
    if (name == "afore") return StrategyKind::afore;
    if (name == "reself") return StrategyKind::reself;
    if (name == "osdf") return StrategyKind::osdf;
    throw FormatError("unknown strategy '" + name + "'");
}

std::vector<double> afore_encode(std::span<const double> load, std::span<const double> anchor) {
    if (load.size() != anchor.size() || load.empty()) {
        throw ShapeError("afore_encode: load/anchor length mismatch");
    }
    std::vector<double> pct(load.size());
    for (std::size_t i = 0; i < load.size(); ++i) {
        if (!(anchor[i] > 0.0)) {
            throw DegenerateAnchorError("anchor entry " + std::to_string(anchor[i]) +
                                        " at position " + std::to_string(i) +
                                        " must be strictly positive");
        }
        pct[i] = load[i] / anchor[i] - 1.0;
    }
    return pct;
}

std::vector<double> afore_decode(std::span<const double> pct, std::span<const double> anchor) {
    if (pct.size() != anchor.size() || pct.empty()) {
        throw ShapeError("afore_decode: pct/anchor length mismatch");
    }
    std::vector<double> load(pct.size());
    for (std::size_t i = 0; i < pct.size(); ++i) {
        if (!(anchor[i] > 0.0)) {
            throw DegenerateAnchorError("anchor entry " + std::to_string(anchor[i]) +
                                        " at position " + std::to_string(i) +
                                        " must be strictly positive");
        }
        load[i] = anchor[i] * (pct[i] + 1.0);
    }
    return load;
}

void StrategyArtifact::validate() const {
    if ((kind == StrategyKind::reself) != secondary.has_value()) {
        throw ValidationError("reself artifacts carry a secondary model; others must not");
    }
    if ((kind == StrategyKind::osdf) != lambda.has_value()) {
        throw ValidationError("osdf artifacts carry lambda; others must not");
    }
    if (lambda && !(*lambda > 0.0 && *lambda < 1.0)) {
        throw ValidationError("osdf lambda must lie in (0, 1)");
    }
    if (!(norm_constant_mw > 0.0)) {
        throw ValidationError("norm_constant_mw must be positive");
    }
    primary.check_invariants();
    if (secondary) secondary->check_invariants();
}

nlohmann::json StrategyArtifact::to_json() const {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = strategy_name(kind);
    j["primary_model"] = primary.to_json();
    if (secondary) j["secondary_model"] = secondary->to_json();
    if (lambda) j["lambda"] = *lambda;
    if (primary_input_indices) j["primary_input_indices"] = *primary_input_indices;
    j["normalizer"] = normalizer.to_json();
    j["schema_id"] = schema_id;
    j["norm_constant_mw"] = norm_constant_mw;
    return j;
}

StrategyArtifact StrategyArtifact::from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion) {
        throw FormatError("unsupported artifact format_version");
    }
    StrategyArtifact a;
    a.kind = strategy_from_name(j.at("kind").get<std::string>());
    a.primary = MlpModel::from_json(j.at("primary_model"));
    if (j.contains("secondary_model")) a.secondary = MlpModel::from_json(j.at("secondary_model"));
    if (j.contains("lambda")) a.lambda = j.at("lambda").get<double>();
    if (j.contains("primary_input_indices")) {
        a.primary_input_indices = j.at("primary_input_indices").get<std::vector<std::size_t>>();
    }
    a.normalizer = Normalizer::from_json(j.at("normalizer"));
    a.schema_id = j.at("schema_id").get<std::string>();
    a.norm_constant_mw = j.at("norm_constant_mw").get<double>();
    a.validate();
    return a;
}

void StrategyArtifact::save(const std::string& path) const {
    write_file_atomic(path, to_json().dump(2) + "\n");
}

StrategyArtifact StrategyArtifact::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open artifact: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("bad artifact JSON in " + path + ": " + e.what());
    }
    return from_json(j);
}

namespace {

void require_samples(std::span<const FeatureSample> train_set) {
    if (train_set.empty()) throw ValidationError("training set is empty");
}

std::string schema_of(std::span<const FeatureSample> samples) {
    const std::string& id = samples.front().schema_id;
    for (const auto& s : samples) {
        if (s.schema_id != id) {
            throw SchemaError("mixed sample schemas: '" + id + "' vs '" + s.schema_id + "'");
        }
    }
    return id;
}

Normalizer fit_input_normalizer(std::span<const FeatureSample> train_set) {
    std::vector<std::vector<double>> rows;
    rows.reserve(train_set.size());
    for (const auto& s : train_set) rows.push_back(s.input);
    return Normalizer::fit(rows);
}

double max_target(std::span<const FeatureSample> train_set) {
    double m = 0.0;
    for (const auto& s : train_set) {
        for (double v : s.target) m = std::max(m, std::fabs(v));
    }
    return m > 0.0 ? m : 1.0;
}

std::vector<double> gather(std::span<const double> x, const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) {
        if (i >= x.size()) throw ShapeError("primary input index out of range");
        out.push_back(x[i]);
    }
    return out;
}

// Normalized-input working copies; target transforms are caller-side.
std::vector<FeatureSample> normalized_inputs(std::span<const FeatureSample> samples,
                                             const Normalizer& norm) {
    std::vector<FeatureSample> out(samples.begin(), samples.end());
    for (auto& s : out) s.input = norm.apply(s.input);
    return out;
}

std::vector<std::size_t> model_dims(std::size_t in, const std::vector<std::size_t>& hidden,
                                    std::size_t out) {
    std::vector<std::size_t> dims;
    dims.push_back(in);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(out);
    return dims;
}

} // namespace

StrategyArtifact train_baseline(std::span<const FeatureSample> train_set,
                                std::span<const FeatureSample> val_set, const StageConfig& cfg,
                                const Loss& loss) {
    require_samples(train_set);
    StrategyArtifact a;
    a.kind = StrategyKind::baseline;
    a.schema_id = schema_of(train_set);
    a.normalizer = fit_input_normalizer(train_set);
    a.norm_constant_mw = max_target(train_set);

    auto train_n = normalized_inputs(train_set, a.normalizer);
    auto val_n = normalized_inputs(val_set, a.normalizer);
    const auto dims = model_dims(train_set.front().input.size(), cfg.hidden_dims,
                                 train_set.front().target.size());
    MlpModel init = MlpModel::random(dims, Rng::derive(cfg.train.seed, 0));
    a.primary = train(init, train_n, val_n, loss, cfg.train).model;
    a.validate();
    return a;
}

StrategyArtifact train_afore(std::span<const FeatureSample> train_set,
                             std::span<const FeatureSample> val_set, const StageConfig& cfg,
                             const Loss& loss) {
    require_samples(train_set);
    StrategyArtifact a;
    a.kind = StrategyKind::afore;
    a.schema_id = schema_of(train_set);
    a.normalizer = fit_input_normalizer(train_set);
    a.norm_constant_mw = max_target(train_set);

    auto encode_targets = [](std::vector<FeatureSample> samples) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            auto& s = samples[i];
            if (!s.anchor) {
                throw MissingAnchorError("sample " + std::to_string(i) + " (" +
                                         format_date(s.day_id) + ") lacks an anchor");
            }
            try {
                s.target = afore_encode(s.target, *s.anchor);
            } catch (const DegenerateAnchorError& e) {
                throw DegenerateAnchorError("sample " + std::to_string(i) + " (" +
                                            format_date(s.day_id) + "): " + e.what());
            }
        }
        return samples;
    };
    auto train_n = encode_targets(normalized_inputs(train_set, a.normalizer));
    auto val_n = encode_targets(normalized_inputs(val_set, a.normalizer));

    const auto dims = model_dims(train_set.front().input.size(), cfg.hidden_dims,
                                 train_set.front().target.size());
    MlpModel init = MlpModel::random(dims, Rng::derive(cfg.train.seed, 0));
    a.primary = train(init, train_n, val_n, loss, cfg.train).model;
    a.validate();
    return a;
}

StrategyArtifact train_reself(std::span<const FeatureSample> train_set,
                              std::span<const FeatureSample> val_set, const StageConfig& stage1,
                              const StageConfig& stage2, const Loss& loss,
                              const ReselfOptions& options) {
    require_samples(train_set);
    StrategyArtifact a;
    a.kind = StrategyKind::reself;
    a.schema_id = schema_of(train_set);
    a.normalizer = fit_input_normalizer(train_set);
    a.norm_constant_mw = max_target(train_set);
    a.primary_input_indices = options.primary_input_indices;

    auto train_n = normalized_inputs(train_set, a.normalizer);
    auto val_n = normalized_inputs(val_set, a.normalizer);

    // Stage 1: fit the raw targets, optionally on a restricted input view.
    auto stage1_view = [&](const std::vector<FeatureSample>& samples) {
        if (!a.primary_input_indices) return samples;
        std::vector<FeatureSample> out = samples;
        for (auto& s : out) s.input = gather(s.input, *a.primary_input_indices);
        return out;
    };
    auto train_s1 = stage1_view(train_n);
    auto val_s1 = stage1_view(val_n);
    const auto dims1 = model_dims(train_s1.front().input.size(), stage1.hidden_dims,
                                  train_s1.front().target.size());
    MlpModel init1 = MlpModel::random(dims1, Rng::derive(stage1.train.seed, 0));
    a.primary = train(init1, train_s1, val_s1, loss, stage1.train).model;

    // Stage 2: residuals of the converged stage-1 model on the training
    // split become the targets; the residual model sees the full input.
    auto residual_samples = [&](const std::vector<FeatureSample>& full,
                                const std::vector<FeatureSample>& restricted) {
        std::vector<FeatureSample> out = full;
        for (std::size_t i = 0; i < out.size(); ++i) {
            auto pred = a.primary.forward(restricted[i].input);
            for (std::size_t k = 0; k < pred.size(); ++k) {
                out[i].target[k] -= pred[k];
            }
        }
        return out;
    };
    auto train_s2 = residual_samples(train_n, train_s1);
    auto val_s2 = residual_samples(val_n, val_s1);
    // Residual targets cross zero, so percentage losses do not apply;
    // the residual stage falls back to smooth L1 in that case.
    Loss stage2_loss = loss;
    if (loss.kind == LossKind::mape || loss.kind == LossKind::osdf) {
        stage2_loss = Loss::smooth_l1();
    }
    const auto dims2 = model_dims(train_s2.front().input.size(), stage2.hidden_dims,
                                  train_s2.front().target.size());
    MlpModel init2 = MlpModel::random(dims2, Rng::derive(stage2.train.seed, 1));
    a.secondary = train(init2, train_s2, val_s2, stage2_loss, stage2.train).model;
    a.validate();
    return a;
}

StrategyArtifact train_osdf(std::span<const FeatureSample> train_set,
                            std::span<const FeatureSample> val_set, const StageConfig& cfg,
                            double lambda, bool stop_gradient) {
    require_samples(train_set);
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw ValidationError("osdf training requires lambda in (0, 1), got " +
                              std::to_string(lambda));
    }
    auto check_positive = [](std::span<const FeatureSample> samples) {
        for (const auto& s : samples) {
            for (double t : s.target) {
                if (!(t > kZeroGuard)) {
                    throw DegenerateTargetError(
                        "osdf training requires strictly positive targets; sample " +
                        format_date(s.day_id) + " has " + std::to_string(t));
                }
            }
        }
    };
    check_positive(train_set);
    check_positive(val_set);
    StrategyArtifact a;
    a.kind = StrategyKind::osdf;
    a.lambda = lambda;
    a.schema_id = schema_of(train_set);
    a.normalizer = fit_input_normalizer(train_set);
    a.norm_constant_mw = max_target(train_set);

    auto train_n = normalized_inputs(train_set, a.normalizer);
    auto val_n = normalized_inputs(val_set, a.normalizer);
    const auto dims = model_dims(train_set.front().input.size(), cfg.hidden_dims,
                                 train_set.front().target.size());
    MlpModel init = MlpModel::random(dims, Rng::derive(cfg.train.seed, 0));
    a.primary = train(init, train_n, val_n, Loss::osdf(lambda, stop_gradient), cfg.train).model;
    a.validate();
    return a;
}

std::vector<double> predict(const StrategyArtifact& artifact, const FeatureSample& sample) {
    if (sample.schema_id != artifact.schema_id) {
        throw SchemaError("sample schema '" + sample.schema_id + "' does not match artifact '" +
                          artifact.schema_id + "'");
    }
    const auto x = artifact.normalizer.apply(sample.input);
    switch (artifact.kind) {
        case StrategyKind::baseline:
        case StrategyKind::osdf:
            return artifact.primary.forward(x);
        case StrategyKind::afore: {
            if (!sample.anchor) {
                throw MissingAnchorError("anchored prediction needs the sample's week-prior "
                                         "anchor");
            }
            return afore_decode(artifact.primary.forward(x), *sample.anchor);
        }
        case StrategyKind::reself: {
            auto primary_in =
                artifact.primary_input_indices ? gather(x, *artifact.primary_input_indices) : x;
            auto out = artifact.primary.forward(primary_in);
            auto res = artifact.secondary->forward(x);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += res[i];
            return out;
        }
    }
    throw Error("unreachable strategy kind");
}

TimeSeries gap_fill(const TimeSeries& load, int gap_days, const StrategyArtifact& artifact,
                    const GapFillContext& context) {
    if (gap_days < 4 || gap_days > 10) {
        throw ValidationError("gap_days must lie in [4, 10], got " + std::to_string(gap_days));
    }
    if (artifact.schema_id != kDayAheadSchema) {
        throw SchemaError("gap filling needs a day-ahead artifact, got schema '" +
                          artifact.schema_id + "'");
    }
    if (!context.temperature || !context.calendar) {
        throw ValidationError("gap_fill context needs temperature and calendar");
    }
    const HourIndex gap_hours = static_cast<HourIndex>(gap_days) * 24;
    if (load.end_hour() - load.start_hour < gap_hours) {
        throw InsufficientHistoryError("series shorter than the gap");
    }
    HourIndex gap_start = load.end_hour() - gap_hours;
    if (hour_of_day(load.end_hour()) != 0) {
        throw ValidationError("gap filling expects a series ending on a day boundary");
    }

    TimeSeries filled = load;
    for (int k = 0; k < gap_days; ++k) {
        Date day = date_of_hour(gap_start + static_cast<HourIndex>(k) * 24);
        HourIndex h0 = hour_index_of(day);
        bool any_missing = false;
        for (int h = 0; h < 24; ++h) {
            auto i = filled.index_of(h0 + h);
            if (i && filled.is_missing(*i)) {
                any_missing = true;
                break;
            }
        }
        if (!any_missing) continue;

        auto sample = build_day_ahead(filled, *context.temperature, *context.calendar, day,
                                      /*with_target=*/false);
        auto prediction = predict(artifact, sample);
        for (int h = 0; h < 24; ++h) {
            auto i = filled.index_of(h0 + h);
            if (i && filled.is_missing(*i)) {
                filled.values[*i] = prediction[static_cast<std::size_t>(h)];
                filled.missing[*i] = 0;
            }
        }
    }
    return filled;
}

} // namespace enercast
