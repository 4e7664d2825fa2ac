#include "enercast/errors.hpp"
#include "enercast/rng.hpp"
#include "enercast/strategies.hpp"
#include "enercast/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

using namespace enercast;

namespace {

double autocorrelation(const std::vector<double>& v, std::size_t lag) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i + lag < v.size(); ++i) {
        num += (v[i] - mean) * (v[i + lag] - mean);
    }
    for (double x : v) den += (x - mean) * (x - mean);
    return num / den;
}

// Gaussian elimination with partial pivoting; oracle-grade solver for
// the small normal-equation systems in the recoverability test.
std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

} // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("generation is a pure function of the config") {
    SynthConfig config;
    config.n_hours = 2000;
    config.seed = 42;
    config.noise_std = 2.0;
    config.temp_coupling = 0.5;
    auto a = generate(config);
    auto b = generate(config);
    CHECK(a.load.values == b.load.values);
    CHECK(a.weather[0].temperature.values == b.weather[0].temperature.values);
    config.seed = 43;
    auto c = generate(config);
    CHECK(a.load.values != c.load.values);
}

TEST_CASE("all amplitudes zero gives the constant base load") {
    SynthConfig config;
    config.daily_amp = 0;
    config.weekly_amp = 0;
    config.annual_amp = 0;
    config.noise_std = 0;
    config.temp_coupling = 0;
    config.holiday_drop = 0;
    config.n_hours = 500;
    auto data = generate(config);
    for (double v : data.load.values) CHECK(v == config.base_mw);
}

TEST_CASE("weekly seasonality shows up at lag 168") {
    SynthConfig config;
    config.n_hours = 8760;
    config.weekly_amp = 20.0;
    config.daily_amp = 3.0;
    config.annual_amp = 2.0;
    config.noise_std = 1.0;
    config.seed = 7;
    auto data = generate(config);
    CHECK(autocorrelation(data.load.values, 168) > 0.5);
}

TEST_CASE("configs admitting nonpositive loads are rejected") {
    SynthConfig config;
    config.base_mw = 20.0;
    config.daily_amp = 30.0;
    CHECK_THROWS_AS(config.validate(), ValidationError);
    config = SynthConfig{};
    config.noise_std = 50.0;
    CHECK_THROWS_AS(generate(config), ValidationError);
}

TEST_CASE("generated loads stay strictly positive") {
    SynthConfig config;
    config.n_hours = 5000;
    config.noise_std = 3.0;
    config.weekday_offsets = {5, 3, 1, 0, -2, -8, -9};
    config.holiday_drop = 10.0;
    config.temp_coupling = 0.7;
    config.seed = 9;
    auto data = generate(config);
    double min_v = *std::min_element(data.load.values.begin(), data.load.values.end());
    CHECK(min_v > 0.0);
}

TEST_CASE("known-basis regression recovers the generator amplitudes") {
    SynthConfig config;
    config.n_hours = 5000;
    config.noise_std = 0.0; // exact additive structure
    config.daily_amp = 11.0;
    config.weekly_amp = 4.5;
    config.annual_amp = 7.25;
    config.weekday_offsets = {3.0, 1.5, 0.5, 0.0, -1.0, -5.0, -6.5};
    config.holiday_drop = 9.0;
    config.temp_coupling = 0.45;
    config.seed = 21;
    auto data = generate(config);

    // Regressors: documented sinusoids, 7 weekday dummies (absorbing the
    // base), holiday indicator, temperature anomaly.
    constexpr std::size_t kDim = 12;
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<std::vector<double>> xtx(kDim, std::vector<double>(kDim, 0.0));
    std::vector<double> xty(kDim, 0.0);
    for (std::size_t t = 0; t < config.n_hours; ++t) {
        HourIndex h = data.load.start_hour + static_cast<HourIndex>(t);
        const DayInfo& info = data.calendar.at(date_of_hour(h));
        std::vector<double> row(kDim, 0.0);
        row[0] = std::sin(two_pi * hour_of_day(h) / 24.0);
        row[1] = std::sin(two_pi * (info.day_of_week * 24 + hour_of_day(h)) / 168.0);
        row[2] = std::sin(two_pi * double(t % 8760) / 8760.0);
        row[3 + static_cast<std::size_t>(info.day_of_week)] = 1.0;
        row[10] = info.is_holiday;
        row[11] = data.weather[0].temperature.at(t) - kSynthTempMean;
        for (std::size_t i = 0; i < kDim; ++i) {
            for (std::size_t j = 0; j < kDim; ++j) xtx[i][j] += row[i] * row[j];
            xty[i] += row[i] * data.load.at(t);
        }
    }
    auto beta = solve(xtx, xty);
    CHECK(std::fabs(beta[0] - config.daily_amp) < 1e-6);
    CHECK(std::fabs(beta[1] - config.weekly_amp) < 1e-6);
    CHECK(std::fabs(beta[2] - config.annual_amp) < 1e-6);
    for (std::size_t d = 0; d < 7; ++d) {
        CHECK(std::fabs(beta[3 + d] - (config.base_mw + config.weekday_offsets[d])) < 1e-6);
    }
    CHECK(std::fabs(beta[10] - (-config.holiday_drop)) < 1e-6);
    CHECK(std::fabs(beta[11] - config.temp_coupling) < 1e-6);
}

TEST_CASE("twelve synthetic holidays per year, visible in the load") {
    auto days = synth_holidays(2016);
    CHECK(days.size() == 12);
    SynthConfig config;
    config.n_hours = 40 * 24;
    config.daily_amp = 0;
    config.weekly_amp = 0;
    config.annual_amp = 0;
    config.noise_std = 0;
    config.temp_coupling = 0;
    config.holiday_drop = 15.0;
    auto data = generate(config);
    // Jan 1 and Jan 6 are synthetic holidays.
    CHECK(data.load.at(1) == config.base_mw - 15.0);
    CHECK(data.load.at(5 * 24 + 1) == config.base_mw - 15.0);
    CHECK(data.load.at(2 * 24 + 1) == config.base_mw);
}

TEST_CASE("multiple locations give distinct deterministic channels") {
    SynthConfig config;
    config.n_hours = 300;
    config.n_locations = 3;
    config.seed = 33;
    auto data = generate(config);
    REQUIRE(data.weather.size() == 3);
    CHECK(data.weather[0].location_id == 1);
    CHECK(data.weather[2].location_id == 3);
    CHECK(data.weather[0].temperature.values != data.weather[1].temperature.values);
}

TEST_CASE("testbed schemas differ by exactly the three calendar entries") {
    auto bed = reself_testbed(5);
    CHECK(bed.full_dim == kTestbedInputDim);
    CHECK(bed.blinded_indices.size() == bed.full_dim - 3);
    REQUIRE(!bed.train.empty());
    REQUIRE(!bed.validation.empty());
    REQUIRE(!bed.test.empty());
    CHECK(bed.train.front().input.size() == bed.full_dim);
    for (const auto& s : bed.test) {
        for (double t : s.target) CHECK(t > 0.0);
    }
    auto blinded = restrict_inputs(bed.train, bed.blinded_indices, kTestbedBlindedSchema);
    CHECK(blinded.front().input.size() == bed.full_dim - 3);
    CHECK(blinded.front().schema_id == kTestbedBlindedSchema);
    // The dropped entries are the trailing holiday/weekend/day-of-week.
    for (std::size_t i = 0; i < bed.blinded_indices.size(); ++i) {
        CHECK(blinded.front().input[i] == bed.train.front().input[i]);
    }
}

TEST_CASE("blinded stage-1 residuals carry systematic weekday structure") {
    auto bed = reself_testbed(3);
    auto blinded_train = restrict_inputs(bed.train, bed.blinded_indices, kTestbedBlindedSchema);
    auto blinded_val =
        restrict_inputs(bed.validation, bed.blinded_indices, kTestbedBlindedSchema);

    StageConfig stage;
    stage.hidden_dims = {32};
    stage.train.epochs = 150;
    stage.train.seed = 3;
    stage.train.batch_size = 32;
    stage.train.learning_rate = 3e-3;
    auto artifact = train_baseline(blinded_train, blinded_val, stage, Loss::smooth_l1());

    // Daily mean residuals on held-out days, grouped by weekday.
    auto blinded_test = restrict_inputs(bed.test, bed.blinded_indices, kTestbedBlindedSchema);
    std::vector<double> daily_residuals;
    std::vector<int> weekdays;
    for (const auto& s : blinded_test) {
        auto p = predict(artifact, s);
        double r = 0;
        for (std::size_t i = 0; i < p.size(); ++i) r += s.target[i] - p[i];
        daily_residuals.push_back(r / double(p.size()));
        weekdays.push_back(day_of_week(s.day_id));
    }

    // ANOVA-style decomposition: between-weekday vs within-weekday variance.
    double grand = 0;
    for (double r : daily_residuals) grand += r;
    grand /= double(daily_residuals.size());
    std::array<double, 7> group_sum{}, group_n{};
    for (std::size_t i = 0; i < daily_residuals.size(); ++i) {
        group_sum[static_cast<std::size_t>(weekdays[i])] += daily_residuals[i];
        group_n[static_cast<std::size_t>(weekdays[i])] += 1;
    }
    double between = 0, within = 0;
    for (std::size_t i = 0; i < daily_residuals.size(); ++i) {
        double gmean = group_sum[static_cast<std::size_t>(weekdays[i])] /
                       group_n[static_cast<std::size_t>(weekdays[i])];
        between += (gmean - grand) * (gmean - grand);
        within += (daily_residuals[i] - gmean) * (daily_residuals[i] - gmean);
    }
    CHECK(between > within);
    CHECK(autocorrelation(daily_residuals, 7) > 0.5);
}

TEST_CASE("null testbed variant has no weekday offsets") {
    auto bed = reself_testbed(11, /*with_weekday_offsets=*/false);
    REQUIRE(bed.train.size() >= 7);
    // Same shapes, same schema, different series somewhere in the week.
    CHECK(bed.train.front().input.size() == kTestbedInputDim);
    auto offsets_bed = reself_testbed(11, true);
    bool differs = false;
    for (std::size_t i = 0; i < 7; ++i) {
        if (bed.train[i].target != offsets_bed.train[i].target) differs = true;
    }
    CHECK(differs);
}

TEST_SUITE_END();
