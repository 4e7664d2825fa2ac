#include "enercast/synth.hpp"

#include "enercast/errors.hpp"
#include "enercast/rng.hpp"

#include <algorithm>
#include <cmath>

namespace enercast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double clamp(double v, double lo, double hi) {
    return std::min(std::max(v, lo), hi);
}

} // namespace

void SynthConfig::validate() const {
    if (!(base_mw > 0)) throw ValidationError("base_mw must be positive");
    if (daily_amp < 0 || weekly_amp < 0 || annual_amp < 0 || noise_std < 0) {
        throw ValidationError("amplitudes and noise_std must be nonnegative");
    }
    if (n_hours == 0) throw ValidationError("n_hours must be positive");
    if (n_locations < 1) throw ValidationError("n_locations must be >= 1");
    if (hour_index_of(start) < 0) throw ValidationError("start date before 1970");

    double min_offset = *std::min_element(weekday_offsets.begin(), weekday_offsets.end());
    double temp_swing = kSynthTempAnnualAmp + kSynthTempDailyAmp + 6.0 * kSynthTempNoiseStd;
    double worst = base_mw - daily_amp - weekly_amp - annual_amp + std::min(0.0, min_offset) -
                   std::max(0.0, holiday_drop) - std::fabs(temp_coupling) * temp_swing -
                   8.0 * noise_std;
    if (!(worst > 0)) {
        throw ValidationError("config admits nonpositive loads (worst-case bound " +
                              std::to_string(worst) + " MW)");
    }
}

std::vector<Date> synth_holidays(int year) {
    return {Date{year, 1, 1},   Date{year, 1, 6},   Date{year, 3, 25},  Date{year, 5, 1},
            Date{year, 6, 2},   Date{year, 8, 15},  Date{year, 10, 28}, Date{year, 11, 17},
            Date{year, 12, 24}, Date{year, 12, 25}, Date{year, 12, 26}, Date{year, 12, 31}};
}

SynthData generate(const SynthConfig& config) {
    config.validate();
    const HourIndex start_hour = hour_index_of(config.start);
    const auto n = config.n_hours;
    const std::int64_t n_days = static_cast<std::int64_t>((n + 23) / 24);

    std::vector<Date> holidays;
    Date end_date = add_days(config.start, n_days);
    for (int y = config.start.year; y <= end_date.year; ++y) {
        auto h = synth_holidays(y);
        holidays.insert(holidays.end(), h.begin(), h.end());
    }
    CalendarInfo calendar = CalendarInfo::build(config.start, n_days + 1, holidays);

    Rng load_noise(Rng::derive(config.seed, 0));
    std::vector<Rng> temp_noise;
    std::vector<Rng> hum_noise;
    std::vector<Rng> wind_noise;
    std::vector<Rng> cloud_noise;
    for (int loc = 0; loc < config.n_locations; ++loc) {
        auto loc_seed = static_cast<std::uint64_t>(loc);
        temp_noise.emplace_back(Rng::derive(config.seed, 16 + loc_seed * 4));
        hum_noise.emplace_back(Rng::derive(config.seed, 17 + loc_seed * 4));
        wind_noise.emplace_back(Rng::derive(config.seed, 18 + loc_seed * 4));
        cloud_noise.emplace_back(Rng::derive(config.seed, 19 + loc_seed * 4));
    }

    std::vector<WeatherData> weather(static_cast<std::size_t>(config.n_locations));
    for (int loc = 0; loc < config.n_locations; ++loc) {
        auto& w = weather[static_cast<std::size_t>(loc)];
        w.location_id = loc + 1;
        for (TimeSeries* s : {&w.temperature, &w.humidity, &w.wind_speed, &w.cloudiness}) {
            s->start_hour = start_hour;
            s->values.resize(n);
            s->missing.assign(n, 0);
        }
        w.temperature.channel = Channel::temperature;
        w.humidity.channel = Channel::humidity;
        w.wind_speed.channel = Channel::wind_speed;
        w.cloudiness.channel = Channel::cloudiness;
    }

    std::vector<double> load_values(n);
    for (std::size_t t = 0; t < n; ++t) {
        const HourIndex h = start_hour + static_cast<HourIndex>(t);
        const Date day = date_of_hour(h);
        const DayInfo& info = calendar.at(day);
        const int hod = hour_of_day(h);
        const int how = info.day_of_week * 24 + hod;
        const double year_phase = kTwoPi * static_cast<double>(t % 8760) / 8760.0;

        for (int loc = 0; loc < config.n_locations; ++loc) {
            auto& w = weather[static_cast<std::size_t>(loc)];
            double loc_shift = 0.8 * loc;
            double temp = kSynthTempMean - kSynthTempAnnualAmp * std::cos(year_phase) +
                          kSynthTempDailyAmp * std::sin(kTwoPi * hod / 24.0) + loc_shift +
                          kSynthTempNoiseStd * temp_noise[static_cast<std::size_t>(loc)].normal();
            w.temperature.values[t] = temp;
            w.humidity.values[t] =
                clamp(60.0 - 20.0 * std::sin(year_phase) - 5.0 * std::sin(kTwoPi * hod / 24.0) +
                          2.0 * hum_noise[static_cast<std::size_t>(loc)].normal() + loc_shift,
                      5.0, 100.0);
            w.wind_speed.values[t] =
                std::max(0.3, 6.0 + 2.0 * std::sin(kTwoPi * how / 168.0) +
                                  wind_noise[static_cast<std::size_t>(loc)].normal());
            w.cloudiness.values[t] =
                clamp(50.0 - 25.0 * std::sin(year_phase) +
                          5.0 * cloud_noise[static_cast<std::size_t>(loc)].normal(),
                      0.0, 100.0);
        }

        double value = config.base_mw +
                       config.daily_amp * std::sin(kTwoPi * hod / 24.0) +
                       config.weekly_amp * std::sin(kTwoPi * how / 168.0) +
                       config.annual_amp * std::sin(year_phase) +
                       config.weekday_offsets[static_cast<std::size_t>(info.day_of_week)];
        if (info.is_holiday) value -= config.holiday_drop;
        value += config.temp_coupling * (weather[0].temperature.values[t] - kSynthTempMean);
        value += config.noise_std * load_noise.normal();
        load_values[t] = value;
    }

    SynthData out;
    out.load = TimeSeries::from_values(start_hour, Channel::load, std::move(load_values));
    for (double v : out.load.values) {
        if (!(v > 0)) throw ValidationError("generated load includes a nonpositive value");
    }
    out.temperature = weather[0].temperature;
    out.calendar = std::move(calendar);
    out.weather = std::move(weather);
    std::sort(holidays.begin(), holidays.end());
    out.holidays = std::move(holidays);
    return out;
}

std::vector<FeatureSample> restrict_inputs(std::span<const FeatureSample> samples,
                                           const std::vector<std::size_t>& indices,
                                           const std::string& schema_id) {
    std::vector<FeatureSample> out(samples.begin(), samples.end());
    for (auto& s : out) {
        std::vector<double> view;
        view.reserve(indices.size());
        for (std::size_t i : indices) {
            if (i >= s.input.size()) throw ShapeError("restriction index out of range");
            view.push_back(s.input[i]);
        }
        s.input = std::move(view);
        s.schema_id = schema_id;
    }
    return out;
}

ReselfTestbed reself_testbed(std::uint64_t seed, bool with_weekday_offsets) {
    SynthConfig config;
    config.base_mw = 100.0;
    config.daily_amp = 10.0;
    config.weekly_amp = 2.0;
    config.annual_amp = 15.0; // confounds level-based weekday inference
    if (with_weekday_offsets) {
        config.weekday_offsets = {12.0, 8.0, 4.0, 0.0, -4.0, -14.0, -18.0};
    }
    config.holiday_drop = 8.0;
    config.temp_coupling = 0.6;
    config.noise_std = 1.0;
    config.n_hours = 550 * 24;
    config.seed = seed;

    ReselfTestbed bed;
    bed.data = generate(config);

    const TimeSeries& load = bed.data.load;
    const TimeSeries& temp = bed.data.temperature;
    std::vector<FeatureSample> samples;
    Date first = add_days(config.start, 7);
    Date last = add_days(config.start, static_cast<std::int64_t>(config.n_hours / 24));
    for (Date d = first; d < last; d = add_days(d, 1)) {
        FeatureSample s;
        s.day_id = d;
        s.schema_id = kTestbedSchema;
        s.target_start_hour = hour_index_of(d);
        s.input.reserve(kTestbedInputDim);
        // Hourly profile of the trailing week's mean day; the 1/7 average
        // cancels the weekday offsets out of the stage-1 view.
        std::array<double, 24> week_mean{};
        for (int lag = 1; lag <= 7; ++lag) {
            auto day = load.day_values(add_days(d, -lag), "load(d-" + std::to_string(lag) + ")");
            for (int h = 0; h < 24; ++h) week_mean[static_cast<std::size_t>(h)] += day[static_cast<std::size_t>(h)] / 7.0;
        }
        s.input.insert(s.input.end(), week_mean.begin(), week_mean.end());
        auto td = temp.day_values(d, "temp(d)");
        s.input.insert(s.input.end(), td.begin(), td.end());
        const DayInfo& info = bed.data.calendar.at(d);
        s.input.push_back(info.is_holiday);
        s.input.push_back(info.is_weekend);
        s.input.push_back(info.day_of_week);
        s.target = load.day_values(d, "load(d)");
        samples.push_back(std::move(s));
    }

    for (std::size_t i = 0; i + 3 < kTestbedInputDim; ++i) bed.blinded_indices.push_back(i);

    const std::size_t n = samples.size();
    const std::size_t n_train = n * 70 / 100;
    const std::size_t n_val = n * 15 / 100;
    bed.train.assign(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(n_train));
    bed.validation.assign(samples.begin() + static_cast<std::ptrdiff_t>(n_train),
                          samples.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    bed.test.assign(samples.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), samples.end());
    return bed;
}

} // namespace enercast
