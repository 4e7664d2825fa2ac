#include "enercast/cli.hpp"

#include "enercast/csv.hpp"
#include "enercast/errors.hpp"
#include "enercast/features.hpp"
#include "enercast/metrics.hpp"
#include "enercast/strategies.hpp"
#include "enercast/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace enercast::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

DateRange parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw UsageError("range must be 'YYYY-MM-DD:YYYY-MM-DD', got '" + s + "'");
    }
    DateRange r{parse_date(s.substr(0, colon)), parse_date(s.substr(colon + 1))};
    if (r.end < r.begin) throw UsageError("range '" + s + "' ends before it begins");
    return r;
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::size_t> parse_hidden(const std::string& s) {
    std::vector<std::size_t> dims;
    for (const auto& part : split_csv_list(s)) {
        try {
            dims.push_back(static_cast<std::size_t>(std::stoul(part)));
        } catch (const std::exception&) {
            throw UsageError("bad hidden layer list '" + s + "'");
        }
    }
    return dims;
}

/// Loads a config JSON object and expands it into CLI tokens so that
/// explicit flags, parsed later, win. Unknown keys are rejected.
std::vector<std::string> config_tokens(const CLI::App& cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("bad config JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");

    std::vector<std::string> tokens;
    for (const auto& [key, value] : j.items()) {
        std::string flag = "--" + key;
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        if (opt == nullptr) {
            throw UsageError("unknown config key '" + key + "' for command '" +
                             cmd.get_name() + "'");
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(flag);
        } else if (value.is_string()) {
            tokens.push_back(flag);
            tokens.push_back(value.get<std::string>());
        } else if (value.is_number_integer()) {
            tokens.push_back(flag);
            tokens.push_back(std::to_string(value.get<long long>()));
        } else if (value.is_number_float()) {
            tokens.push_back(flag);
            tokens.push_back(format_double(value.get<double>()));
        } else {
            throw UsageError("config key '" + key + "' must be a scalar");
        }
    }
    return tokens;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& options) {
    json m;
    m["command"] = command;
    m["options"] = options;
    m["tool"] = "enercast";
    m["version"] = "1.0.0";
    m["format_version"] = 1;
    write_file_atomic(out_path, m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Data loading
// ---------------------------------------------------------------------------

struct DataPaths {
    std::string data_dir;
    std::string load_csv;
    std::string weather_csv;
    std::string holidays_file;

    void resolve() {
        if (!data_dir.empty()) {
            if (load_csv.empty()) load_csv = (fs::path(data_dir) / "load.csv").string();
            if (weather_csv.empty()) weather_csv = (fs::path(data_dir) / "weather.csv").string();
            if (holidays_file.empty()) {
                auto p = fs::path(data_dir) / "holidays.txt";
                if (fs::exists(p)) holidays_file = p.string();
            }
        }
        if (load_csv.empty()) throw UsageError("no load data given (--data or --load)");
    }

    void add_options(CLI::App& cmd) {
        cmd.add_option("--data", data_dir, "Directory with load.csv, weather.csv, holidays.txt")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        cmd.add_option("--load", load_csv, "Load CSV path")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        cmd.add_option("--weather", weather_csv, "Weather CSV path")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        cmd.add_option("--holidays", holidays_file, "Holiday date list path")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    json to_json() const {
        return json{{"data", data_dir},
                    {"load", load_csv},
                    {"weather", weather_csv},
                    {"holidays", holidays_file}};
    }
};

struct DataBundle {
    TimeSeries load;
    std::vector<WeatherData> weather;
    std::vector<Date> holidays;
    CalendarInfo calendar;
    TimeSeries temperature; // location with the lowest id, gap-filled
    TimeSeries humidity;
};

DataBundle load_bundle(DataPaths paths) {
    paths.resolve();
    DataBundle b;
    b.load = ingest_load_csv(paths.load_csv);
    if (!paths.weather_csv.empty() && fs::exists(paths.weather_csv)) {
        b.weather = ingest_weather_csv(paths.weather_csv);
    }
    if (!paths.holidays_file.empty()) b.holidays = load_holiday_file(paths.holidays_file);

    Date start = date_of_hour(b.load.start_hour);
    std::int64_t n_days = (static_cast<std::int64_t>(b.load.size()) + 23) / 24 + 2;
    b.calendar = CalendarInfo::build(start, n_days, b.holidays);
    if (!b.weather.empty()) {
        b.temperature = locf_fill(b.weather.front().temperature);
        b.humidity = locf_fill(b.weather.front().humidity);
    }
    return b;
}

DateRange full_range(const TimeSeries& load) {
    Date begin = date_of_hour(load.start_hour);
    Date end = date_of_hour(load.end_hour() + 23); // round up to a day boundary
    return DateRange{begin, end};
}

struct SplitRanges {
    DateRange train;
    DateRange validation;
    DateRange test;
};

/// Explicit ranges when given, otherwise a chronological 70/15/15 day split.
SplitRanges resolve_split(const TimeSeries& load, const std::string& train_s,
                          const std::string& val_s, const std::string& test_s) {
    if (!train_s.empty() || !val_s.empty() || !test_s.empty()) {
        if (train_s.empty() || val_s.empty() || test_s.empty()) {
            throw UsageError("give all of --train-range/--val-range/--test-range or none");
        }
        SplitRanges r{parse_range(train_s), parse_range(val_s), parse_range(test_s)};
        SplitSpec spec{r.train, r.validation, r.test};
        spec.validate();
        return r;
    }
    DateRange all = full_range(load);
    std::int64_t days = all.n_days();
    Date t_end = add_days(all.begin, days * 70 / 100);
    Date v_end = add_days(all.begin, days * 85 / 100);
    return SplitRanges{{all.begin, t_end}, {t_end, v_end}, {v_end, all.end}};
}

// ---------------------------------------------------------------------------
// Sample building per schema
// ---------------------------------------------------------------------------

struct SchemaOptions {
    std::string schema = "day";
    std::string scenario = "day";
    int stride_hours = 0; // 0 = scenario default
    std::string window_spec; // "input,gap,horizon"
};

Scenario resolve_scenario(const SchemaOptions& opts) {
    Scenario sc;
    if (!opts.window_spec.empty()) {
        auto parts = split_csv_list(opts.window_spec);
        if (parts.size() != 3) throw UsageError("--window must be 'input,gap,horizon' hours");
        try {
            sc.input_hours = std::stoi(parts[0]);
            sc.gap_hours = std::stoi(parts[1]);
            sc.horizon_hours = std::stoi(parts[2]);
        } catch (const std::exception&) {
            throw UsageError("bad --window '" + opts.window_spec + "'");
        }
        sc.stride_hours = sc.horizon_hours;
        sc.id = "custom";
    } else if (opts.scenario == "day") {
        sc = Scenario::day_ahead();
    } else if (opts.scenario == "week") {
        sc = Scenario::week_ahead();
    } else {
        throw UsageError("--scenario must be 'day' or 'week'");
    }
    if (opts.stride_hours > 0) sc.stride_hours = opts.stride_hours;
    sc.validate();
    return sc;
}

std::vector<FeatureSample> build_schema_samples(const DataBundle& b, const SchemaOptions& opts,
                                                const DateRange& range) {
    if (opts.schema == "day") {
        if (b.weather.empty()) throw ValidationError("day schema needs weather data");
        return build_day_ahead_set(b.load, b.temperature, b.calendar, range).samples;
    }
    if (opts.schema == "year") {
        if (b.weather.empty()) throw ValidationError("year schema needs weather data");
        auto months = aggregate_monthly(b.load, b.temperature, b.humidity, b.calendar);
        std::vector<FeatureSample> out;
        for (const auto& m : months) {
            Date first{m.year, m.month, 1};
            if (!range.contains(first)) continue;
            try {
                out.push_back(build_year_ahead(months, m.year, m.month));
            } catch (const InsufficientHistoryError&) {
            }
        }
        return out;
    }
    if (opts.schema == "month") {
        if (b.weather.empty()) throw ValidationError("month schema needs weather data");
        auto days = aggregate_daily(b.load, b.temperature, b.humidity);
        std::vector<FeatureSample> out;
        for (const auto& d : days) {
            if (!range.contains(d.date)) continue;
            try {
                out.push_back(build_month_ahead(days, b.calendar, d.date));
            } catch (const InsufficientHistoryError&) {
            }
        }
        return out;
    }
    if (opts.schema == "window") {
        Scenario sc = resolve_scenario(opts);
        TimeSeries slice = b.load.slice_hours(hour_index_of(range.begin),
                                              std::min(hour_index_of(range.end), b.load.end_hour()));
        std::size_t n = window_count(slice.size(), sc.input_hours, sc.gap_hours, sc.horizon_hours,
                                     sc.stride_hours);
        std::vector<FeatureSample> out;
        for (std::size_t k = 0; k < n; ++k) {
            HourIndex t0 = slice.start_hour +
                           static_cast<HourIndex>(k) * static_cast<HourIndex>(sc.stride_hours);
            out.push_back(build_window(slice, b.weather, sc.input_hours, sc.gap_hours,
                                       sc.horizon_hours, t0));
        }
        return out;
    }
    throw UsageError("--schema must be one of day, year, month, window");
}

// ---------------------------------------------------------------------------
// synth command
// ---------------------------------------------------------------------------

struct SynthCmd {
    std::string out_dir;
    std::string preset = "default";
    std::uint64_t seed = 0;
    std::size_t hours = 2 * 8760;
    std::string start_date = "2015-01-01";
    int locations = 1;
    double base_mw = -1, daily_amp = -1, weekly_amp = -1, annual_amp = -1;
    double noise_std = -1, holiday_drop = -1, temp_coupling = -1e30;
    std::string weekday_offsets;

    SynthConfig to_config() const {
        SynthConfig c;
        if (preset == "default") {
            c.daily_amp = 10;
            c.weekly_amp = 5;
            c.annual_amp = 8;
            c.weekday_offsets = {2, 1, 0, 0, -1, -4, -5};
            c.holiday_drop = 5;
            c.temp_coupling = 0.5;
            c.noise_std = 1.0;
        } else if (preset == "weekly") {
            c.daily_amp = 8;
            c.weekly_amp = 35;
            c.annual_amp = 6;
            c.weekday_offsets = {0, 0, 0, 0, 0, 0, 0};
            c.holiday_drop = 3;
            c.temp_coupling = 0.4;
            c.noise_std = 1.0;
        } else if (preset == "flat") {
            c.daily_amp = 0;
            c.weekly_amp = 0;
            c.annual_amp = 0;
            c.holiday_drop = 0;
            c.temp_coupling = 0;
            c.noise_std = 0;
        } else {
            throw UsageError("--preset must be default, weekly or flat");
        }
        c.base_mw = base_mw >= 0 ? base_mw : 100.0;
        if (daily_amp >= 0) c.daily_amp = daily_amp;
        if (weekly_amp >= 0) c.weekly_amp = weekly_amp;
        if (annual_amp >= 0) c.annual_amp = annual_amp;
        if (noise_std >= 0) c.noise_std = noise_std;
        if (holiday_drop >= 0) c.holiday_drop = holiday_drop;
        if (temp_coupling > -1e29) c.temp_coupling = temp_coupling;
        if (!weekday_offsets.empty()) {
            auto parts = split_csv_list(weekday_offsets);
            if (parts.size() != 7) throw UsageError("--weekday-offsets needs 7 values");
            for (std::size_t i = 0; i < 7; ++i) {
                try {
                    c.weekday_offsets[i] = std::stod(parts[i]);
                } catch (const std::exception&) {
                    throw UsageError("bad --weekday-offsets '" + weekday_offsets + "'");
                }
            }
        }
        c.n_hours = hours;
        c.seed = seed;
        c.start = parse_date(start_date);
        c.n_locations = locations;
        return c;
    }
};

int run_synth(const SynthCmd& cmd) {
    if (cmd.out_dir.empty()) throw UsageError("synth needs --out directory");
    SynthConfig config = cmd.to_config();
    SynthData data = generate(config);

    fs::create_directories(cmd.out_dir);
    fs::path dir(cmd.out_dir);
    export_load_csv(data.load, (dir / "load.csv").string());
    export_weather_csv(data.weather, (dir / "weather.csv").string());
    write_holiday_file(data.holidays, (dir / "holidays.txt").string());

    json opts;
    opts["preset"] = cmd.preset;
    opts["seed"] = config.seed;
    opts["hours"] = config.n_hours;
    opts["start"] = format_date(config.start);
    opts["locations"] = config.n_locations;
    opts["base_mw"] = config.base_mw;
    opts["daily_amp"] = config.daily_amp;
    opts["weekly_amp"] = config.weekly_amp;
    opts["annual_amp"] = config.annual_amp;
    opts["weekday_offsets"] = config.weekday_offsets;
    opts["holiday_drop"] = config.holiday_drop;
    opts["temp_coupling"] = config.temp_coupling;
    opts["noise_std"] = config.noise_std;
    write_manifest((dir / "manifest.json").string(), "synth", opts);

    std::cout << "wrote " << data.load.size() << " hours to " << cmd.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train command
// ---------------------------------------------------------------------------

struct TrainCmd {
    DataPaths paths;
    SchemaOptions schema;
    std::string strategy = "baseline";
    std::string loss = "smooth_l1";
    double lambda = 0.2;
    bool stop_gradient = false;
    std::string hidden = "64";
    std::string hidden2;
    int epochs = 200;
    int epochs2 = -1;
    int batch_size = 32;
    double learning_rate = 1e-3;
    std::string optimizer = "adam";
    std::uint64_t seed = 0;
    int patience = 0;
    std::string train_range, val_range, test_range;
    std::string out_path;
};

Loss resolve_loss(const std::string& name) {
    if (name == "l1") return Loss::l1();
    if (name == "l2") return Loss::l2();
    if (name == "smooth_l1") return Loss::smooth_l1();
    if (name == "mape") return Loss::mape();
    throw UsageError("--loss must be one of l1, l2, smooth_l1, mape");
}

int run_train(const TrainCmd& cmd) {
    if (cmd.out_path.empty()) throw UsageError("train needs --out artifact path");
    DataBundle bundle = load_bundle(cmd.paths);
    SplitRanges ranges =
        resolve_split(bundle.load, cmd.train_range, cmd.val_range, cmd.test_range);

    auto train_samples = build_schema_samples(bundle, cmd.schema, ranges.train);
    auto val_samples = build_schema_samples(bundle, cmd.schema, ranges.validation);
    if (train_samples.empty()) throw ValidationError("no complete training samples in range");

    StageConfig stage;
    stage.hidden_dims = parse_hidden(cmd.hidden);
    stage.train.epochs = cmd.epochs;
    stage.train.batch_size = cmd.batch_size;
    stage.train.learning_rate = cmd.learning_rate;
    stage.train.seed = cmd.seed;
    if (cmd.optimizer == "sgd") {
        stage.train.optimizer = OptimizerKind::sgd;
    } else if (cmd.optimizer == "adam") {
        stage.train.optimizer = OptimizerKind::adam;
    } else {
        throw UsageError("--optimizer must be sgd or adam");
    }
    if (cmd.patience > 0) stage.train.early_stop_patience = cmd.patience;

    Loss loss = resolve_loss(cmd.loss);
    StrategyKind kind = strategy_from_name(cmd.strategy);

    StrategyArtifact artifact;
    switch (kind) {
        case StrategyKind::baseline:
            artifact = train_baseline(train_samples, val_samples, stage, loss);
            break;
        case StrategyKind::afore:
            if (cmd.schema.schema != "day") {
                throw ValidationError("afore needs the day schema (anchored targets)");
            }
            artifact = train_afore(train_samples, val_samples, stage, loss);
            break;
        case StrategyKind::reself: {
            StageConfig stage2 = stage;
            if (!cmd.hidden2.empty()) stage2.hidden_dims = parse_hidden(cmd.hidden2);
            if (cmd.epochs2 >= 0) stage2.train.epochs = cmd.epochs2;
            stage2.train.seed = cmd.seed + 1;
            artifact = train_reself(train_samples, val_samples, stage, stage2, loss);
            break;
        }
        case StrategyKind::osdf:
            artifact = train_osdf(train_samples, val_samples, stage, cmd.lambda,
                                  cmd.stop_gradient);
            break;
    }
    artifact.save(cmd.out_path);

    json opts;
    opts["data"] = cmd.paths.to_json();
    opts["schema"] = cmd.schema.schema;
    opts["strategy"] = cmd.strategy;
    opts["loss"] = cmd.loss;
    if (kind == StrategyKind::osdf) {
        opts["lambda"] = cmd.lambda;
        opts["stop_gradient"] = cmd.stop_gradient;
    }
    opts["hidden"] = cmd.hidden;
    if (kind == StrategyKind::reself) {
        opts["hidden2"] = cmd.hidden2.empty() ? cmd.hidden : cmd.hidden2;
        opts["epochs2"] = cmd.epochs2 >= 0 ? cmd.epochs2 : cmd.epochs;
    }
    opts["epochs"] = cmd.epochs;
    opts["batch_size"] = cmd.batch_size;
    opts["learning_rate"] = cmd.learning_rate;
    opts["optimizer"] = cmd.optimizer;
    opts["seed"] = cmd.seed;
    opts["patience"] = cmd.patience;
    opts["train_range"] = format_date(ranges.train.begin) + ":" + format_date(ranges.train.end);
    opts["val_range"] =
        format_date(ranges.validation.begin) + ":" + format_date(ranges.validation.end);
    opts["test_range"] = format_date(ranges.test.begin) + ":" + format_date(ranges.test.end);
    opts["n_train_samples"] = train_samples.size();
    opts["n_val_samples"] = val_samples.size();
    write_manifest(cmd.out_path + ".manifest.json", "train", opts);

    std::cout << "trained " << cmd.strategy << " on " << train_samples.size() << " samples -> "
              << cmd.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// predict command
// ---------------------------------------------------------------------------

struct PredictCmd {
    DataPaths paths;
    std::string artifact_path;
    std::string date;
    std::string out_path;
};

int run_predict(const PredictCmd& cmd) {
    if (cmd.artifact_path.empty() || cmd.date.empty() || cmd.out_path.empty()) {
        throw UsageError("predict needs --artifact, --date and --out");
    }
    StrategyArtifact artifact = StrategyArtifact::load(cmd.artifact_path);
    if (artifact.schema_id != kDayAheadSchema) {
        throw SchemaError("predict supports day-ahead artifacts, got schema '" +
                          artifact.schema_id + "'");
    }
    DataBundle bundle = load_bundle(cmd.paths);
    Date day = parse_date(cmd.date);
    auto sample = build_day_ahead(bundle.load, bundle.temperature, bundle.calendar, day,
                                  /*with_target=*/false);
    auto prediction = predict(artifact, sample);

    std::string out = "timestamp,predicted_mw\n";
    for (std::size_t h = 0; h < prediction.size(); ++h) {
        out += format_utc_hour(sample.target_start_hour + static_cast<HourIndex>(h));
        out += ',';
        out += format_double(prediction[h]);
        out += '\n';
    }
    write_file_atomic(cmd.out_path, out);

    json opts;
    opts["data"] = cmd.paths.to_json();
    opts["artifact"] = cmd.artifact_path;
    opts["date"] = cmd.date;
    write_manifest(cmd.out_path + ".manifest.json", "predict", opts);
    std::cout << "wrote 24h prediction for " << cmd.date << " -> " << cmd.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// gapfill command
// ---------------------------------------------------------------------------

struct GapfillCmd {
    DataPaths paths;
    std::string artifact_path;
    int gap_days = 7;
    bool simulate = false;
    std::string out_path;
};

int run_gapfill(const GapfillCmd& cmd) {
    if (cmd.artifact_path.empty() || cmd.out_path.empty()) {
        throw UsageError("gapfill needs --artifact and --out");
    }
    StrategyArtifact artifact = StrategyArtifact::load(cmd.artifact_path);
    DataBundle bundle = load_bundle(cmd.paths);

    TimeSeries load = bundle.load;
    if (cmd.simulate) {
        // Mask the trailing gap to rehearse the realistic scenario.
        std::size_t gap_hours = static_cast<std::size_t>(cmd.gap_days) * 24;
        if (load.size() < gap_hours) throw ValidationError("series shorter than simulated gap");
        for (std::size_t i = load.size() - gap_hours; i < load.size(); ++i) {
            load.missing[i] = 1;
        }
    }
    GapFillContext context{&bundle.temperature, &bundle.calendar};
    TimeSeries filled = gap_fill(load, cmd.gap_days, artifact, context);
    export_load_csv(filled, cmd.out_path);

    json opts;
    opts["data"] = cmd.paths.to_json();
    opts["artifact"] = cmd.artifact_path;
    opts["gap_days"] = cmd.gap_days;
    opts["simulate"] = cmd.simulate;
    write_manifest(cmd.out_path + ".manifest.json", "gapfill", opts);
    std::cout << "filled " << cmd.gap_days << "-day gap -> " << cmd.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate command
// ---------------------------------------------------------------------------

struct EvaluateCmd {
    DataPaths paths;
    SchemaOptions schema;
    std::string artifact_path;
    std::string range;
    std::string out_path;
    std::string plot_path;
};

/// Derives evaluation options from the artifact: windowed artifacts pin
/// their own input/gap/horizon sizes via the schema id.
SchemaOptions schema_options_for(const StrategyArtifact& artifact, SchemaOptions opts) {
    if (artifact.schema_id == kDayAheadSchema) {
        opts.schema = "day";
    } else if (artifact.schema_id == kYearAheadSchema) {
        opts.schema = "year";
    } else if (artifact.schema_id == kMonthAheadSchema) {
        opts.schema = "month";
    } else if (artifact.schema_id.rfind("window/1:in", 0) == 0) {
        opts.schema = "window";
        int in = 0, gap = 0, hor = 0;
        if (std::sscanf(artifact.schema_id.c_str(), "window/1:in%d:gap%d:hor%d", &in, &gap,
                        &hor) != 3) {
            throw SchemaError("cannot parse window schema '" + artifact.schema_id + "'");
        }
        opts.window_spec =
            std::to_string(in) + "," + std::to_string(gap) + "," + std::to_string(hor);
    } else {
        throw SchemaError("artifact has unknown schema '" + artifact.schema_id + "'");
    }
    return opts;
}

int run_evaluate(const EvaluateCmd& cmd) {
    if (cmd.artifact_path.empty() || cmd.out_path.empty()) {
        throw UsageError("evaluate needs --artifact and --out");
    }
    StrategyArtifact artifact = StrategyArtifact::load(cmd.artifact_path);
    DataBundle bundle = load_bundle(cmd.paths);
    SchemaOptions opts = schema_options_for(artifact, cmd.schema);

    DateRange range = cmd.range.empty()
                          ? resolve_split(bundle.load, "", "", "").test
                          : parse_range(cmd.range);

    EvaluationReport report;
    std::vector<FeatureSample> samples;
    if (opts.schema == "window") {
        Scenario sc = resolve_scenario(opts);
        if (sc.input_hours == 72 && sc.gap_hours == 48 && sc.horizon_hours == 24) {
            sc.id = "day-ahead";
        } else if (sc.input_hours == 336 && sc.gap_hours == 48 && sc.horizon_hours == 168) {
            sc.id = "week-ahead";
        }
        TimeSeries slice = bundle.load.slice_hours(
            hour_index_of(range.begin), std::min(hour_index_of(range.end), bundle.load.end_hour()));
        report = evaluate_scenario(artifact, slice, bundle.weather, sc);
        if (!cmd.plot_path.empty()) samples = build_schema_samples(bundle, opts, range);
    } else {
        samples = build_schema_samples(bundle, opts, range);
        report = evaluate_samples(artifact, samples, opts.schema + "-ahead");
    }

    write_file_atomic(cmd.out_path, report.to_json().dump(2) + "\n");
    fs::path table_path = fs::path(cmd.out_path).replace_extension(".txt");
    write_file_atomic(table_path.string(), report.to_table());
    if (!cmd.plot_path.empty()) write_plot_csv(artifact, samples, cmd.plot_path);

    json opts_json;
    opts_json["data"] = cmd.paths.to_json();
    opts_json["artifact"] = cmd.artifact_path;
    opts_json["range"] = format_date(range.begin) + ":" + format_date(range.end);
    opts_json["schema"] = opts.schema;
    write_manifest(cmd.out_path + ".manifest.json", "evaluate", opts_json);

    std::cout << report.to_table();
    return 0;
}

// ---------------------------------------------------------------------------
// compare command
// ---------------------------------------------------------------------------

struct CompareCmd {
    DataPaths paths;
    SchemaOptions schema;
    std::string artifact_list;
    std::string range;
    std::string out_path;
};

int run_compare(const CompareCmd& cmd) {
    if (cmd.artifact_list.empty() || cmd.out_path.empty()) {
        throw UsageError("compare needs --artifacts and --out");
    }
    std::vector<StrategyArtifact> artifacts;
    for (const auto& p : split_csv_list(cmd.artifact_list)) {
        artifacts.push_back(StrategyArtifact::load(p));
    }
    if (artifacts.size() < 2) throw UsageError("compare needs at least 2 artifacts");

    DataBundle bundle = load_bundle(cmd.paths);
    SchemaOptions opts = schema_options_for(artifacts.front(), cmd.schema);
    DateRange range = cmd.range.empty() ? resolve_split(bundle.load, "", "", "").test
                                        : parse_range(cmd.range);
    auto samples = build_schema_samples(bundle, opts, range);
    Comparison comparison = compare(artifacts, samples, opts.schema + "-ahead");

    write_file_atomic(cmd.out_path, comparison.to_json().dump(2) + "\n");
    fs::path table_path = fs::path(cmd.out_path).replace_extension(".txt");
    write_file_atomic(table_path.string(), comparison.to_table());

    json opts_json;
    opts_json["data"] = cmd.paths.to_json();
    opts_json["artifacts"] = split_csv_list(cmd.artifact_list);
    opts_json["range"] = format_date(range.begin) + ":" + format_date(range.end);
    write_manifest(cmd.out_path + ".manifest.json", "compare", opts_json);

    std::cout << comparison.to_table();
    return 0;
}

// ---------------------------------------------------------------------------
// App wiring
// ---------------------------------------------------------------------------

void add_schema_options(CLI::App& cmd, SchemaOptions& opts, bool with_schema) {
    auto take_last = [](CLI::Option* o) {
        o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    if (with_schema) {
        take_last(cmd.add_option("--schema", opts.schema, "Feature schema: day, year, month, window"));
    }
    take_last(cmd.add_option("--scenario", opts.scenario, "Windowed scenario: day or week"));
    take_last(cmd.add_option("--stride", opts.stride_hours, "Window stride in hours"));
    take_last(cmd.add_option("--window", opts.window_spec, "Custom window 'input,gap,horizon'"));
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"energy time-series forecasting toolkit"};
    app.require_subcommand(1);
    auto take_last = [](CLI::Option* o) {
        o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        return o;
    };

    SynthCmd synth_cmd;
    CLI::App* synth_app = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string synth_config;
    take_last(synth_app->add_option("--config", synth_config, "JSON config file"));
    take_last(synth_app->add_option("--out", synth_cmd.out_dir, "Output directory"));
    take_last(synth_app->add_option("--preset", synth_cmd.preset, "default, weekly or flat"));
    take_last(synth_app->add_option("--seed", synth_cmd.seed, "Random seed"));
    take_last(synth_app->add_option("--hours", synth_cmd.hours, "Series length in hours"));
    take_last(synth_app->add_option("--start", synth_cmd.start_date, "Start date YYYY-MM-DD"));
    take_last(synth_app->add_option("--locations", synth_cmd.locations, "Weather locations"));
    take_last(synth_app->add_option("--base-mw", synth_cmd.base_mw, "Base load level"));
    take_last(synth_app->add_option("--daily-amp", synth_cmd.daily_amp, "Daily amplitude"));
    take_last(synth_app->add_option("--weekly-amp", synth_cmd.weekly_amp, "Weekly amplitude"));
    take_last(synth_app->add_option("--annual-amp", synth_cmd.annual_amp, "Annual amplitude"));
    take_last(synth_app->add_option("--noise-std", synth_cmd.noise_std, "Gaussian noise std"));
    take_last(synth_app->add_option("--holiday-drop", synth_cmd.holiday_drop, "Holiday drop MW"));
    take_last(synth_app->add_option("--temp-coupling", synth_cmd.temp_coupling,
                                    "Load/temperature coupling"));
    take_last(synth_app->add_option("--weekday-offsets", synth_cmd.weekday_offsets,
                                    "7 comma-separated MW offsets, Monday first"));

    TrainCmd train_cmd;
    CLI::App* train_app = app.add_subcommand("train", "Train a forecasting strategy");
    std::string train_config;
    take_last(train_app->add_option("--config", train_config, "JSON config file"));
    train_cmd.paths.add_options(*train_app);
    add_schema_options(*train_app, train_cmd.schema, true);
    take_last(train_app->add_option("--strategy", train_cmd.strategy,
                                    "baseline, afore, reself or osdf"));
    take_last(train_app->add_option("--loss", train_cmd.loss, "l1, l2, smooth_l1 or mape"));
    take_last(train_app->add_option("--lambda", train_cmd.lambda, "osdf soft-target weight"));
    train_app->add_flag("--stop-gradient", train_cmd.stop_gradient,
                        "Hold the osdf soft target constant per step");
    take_last(train_app->add_option("--hidden", train_cmd.hidden, "Hidden dims, e.g. 64 or 64,32"));
    take_last(train_app->add_option("--hidden2", train_cmd.hidden2, "Residual-stage hidden dims"));
    take_last(train_app->add_option("--epochs", train_cmd.epochs, "Training epochs"));
    take_last(train_app->add_option("--epochs2", train_cmd.epochs2, "Residual-stage epochs"));
    take_last(train_app->add_option("--batch-size", train_cmd.batch_size, "Minibatch size"));
    take_last(train_app->add_option("--lr", train_cmd.learning_rate, "Learning rate"));
    take_last(train_app->add_option("--optimizer", train_cmd.optimizer, "sgd or adam"));
    take_last(train_app->add_option("--seed", train_cmd.seed, "Random seed"));
    take_last(train_app->add_option("--patience", train_cmd.patience,
                                    "Early-stopping patience (0 = off)"));
    take_last(train_app->add_option("--train-range", train_cmd.train_range, "A:B dates"));
    take_last(train_app->add_option("--val-range", train_cmd.val_range, "A:B dates"));
    take_last(train_app->add_option("--test-range", train_cmd.test_range, "A:B dates"));
    take_last(train_app->add_option("--out", train_cmd.out_path, "Artifact output path"));

    PredictCmd predict_cmd;
    CLI::App* predict_app = app.add_subcommand("predict", "One-day-ahead prediction");
    std::string predict_config;
    take_last(predict_app->add_option("--config", predict_config, "JSON config file"));
    predict_cmd.paths.add_options(*predict_app);
    take_last(predict_app->add_option("--artifact", predict_cmd.artifact_path, "Artifact JSON"));
    take_last(predict_app->add_option("--date", predict_cmd.date, "Prediction day YYYY-MM-DD"));
    take_last(predict_app->add_option("--out", predict_cmd.out_path, "Prediction CSV path"));

    GapfillCmd gapfill_cmd;
    CLI::App* gapfill_app = app.add_subcommand("gapfill", "Fill the trailing data gap");
    std::string gapfill_config;
    take_last(gapfill_app->add_option("--config", gapfill_config, "JSON config file"));
    gapfill_cmd.paths.add_options(*gapfill_app);
    take_last(gapfill_app->add_option("--artifact", gapfill_cmd.artifact_path, "Artifact JSON"));
    take_last(gapfill_app->add_option("--gap-days", gapfill_cmd.gap_days, "Gap length (4-10)"));
    gapfill_app->add_flag("--simulate", gapfill_cmd.simulate,
                          "Mask the trailing days first (rehearsal)");
    take_last(gapfill_app->add_option("--out", gapfill_cmd.out_path, "Filled load CSV path"));

    EvaluateCmd evaluate_cmd;
    CLI::App* evaluate_app = app.add_subcommand("evaluate", "Evaluate an artifact");
    std::string evaluate_config;
    take_last(evaluate_app->add_option("--config", evaluate_config, "JSON config file"));
    evaluate_cmd.paths.add_options(*evaluate_app);
    add_schema_options(*evaluate_app, evaluate_cmd.schema, false);
    take_last(evaluate_app->add_option("--artifact", evaluate_cmd.artifact_path, "Artifact JSON"));
    take_last(evaluate_app->add_option("--range", evaluate_cmd.range, "Test range A:B"));
    take_last(evaluate_app->add_option("--out", evaluate_cmd.out_path, "Report JSON path"));
    take_last(evaluate_app->add_option("--plot-data", evaluate_cmd.plot_path,
                                       "Per-window actual/predicted CSV"));

    CompareCmd compare_cmd;
    CLI::App* compare_app = app.add_subcommand("compare", "Compare several artifacts");
    std::string compare_config;
    take_last(compare_app->add_option("--config", compare_config, "JSON config file"));
    compare_cmd.paths.add_options(*compare_app);
    add_schema_options(*compare_app, compare_cmd.schema, false);
    take_last(compare_app->add_option("--artifacts", compare_cmd.artifact_list,
                                      "Comma-separated artifact paths"));
    take_last(compare_app->add_option("--range", compare_cmd.range, "Test range A:B"));
    take_last(compare_app->add_option("--out", compare_cmd.out_path, "Comparison JSON path"));

    try {
        // Expand --config into leading tokens so explicit flags win.
        std::vector<std::string> expanded = args;
        if (!args.empty()) {
            CLI::App* sub = app.get_subcommand_no_throw(args.front());
            std::string config_path;
            for (std::size_t i = 1; i < args.size(); ++i) {
                if (args[i] == "--config" && i + 1 < args.size()) {
                    config_path = args[i + 1];
                } else if (args[i].rfind("--config=", 0) == 0) {
                    config_path = args[i].substr(9);
                }
            }
            if (sub != nullptr && !config_path.empty()) {
                auto tokens = config_tokens(*sub, config_path);
                expanded.clear();
                expanded.push_back(args.front());
                expanded.insert(expanded.end(), tokens.begin(), tokens.end());
                expanded.insert(expanded.end(), args.begin() + 1, args.end());
            }
        }

        // CLI11 wants argv in reverse order for the vector overload.
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                std::cout << (app.get_subcommands().empty()
                                  ? app.help()
                                  : app.get_subcommands().front()->help());
                return 0;
            }
            std::cerr << "error: usage: " << e.what() << "\n";
            return 2;
        }

        if (synth_app->parsed()) return run_synth(synth_cmd);
        if (train_app->parsed()) return run_train(train_cmd);
        if (predict_app->parsed()) return run_predict(predict_cmd);
        if (gapfill_app->parsed()) return run_gapfill(gapfill_cmd);
        if (evaluate_app->parsed()) return run_evaluate(evaluate_cmd);
        if (compare_app->parsed()) return run_compare(compare_cmd);
        std::cerr << "error: usage: no command given\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const DivergedTrainingError& e) {
        std::cerr << "error: training: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: data: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

} // namespace enercast::cli
