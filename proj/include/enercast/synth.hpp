#ifndef ENERCAST_SYNTH_HPP
#define ENERCAST_SYNTH_HPP

#include "enercast/calendar.hpp"
#include "enercast/csv.hpp"
#include "enercast/sample.hpp"
#include "enercast/series.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace enercast {

/**
 * Synthetic hourly load generator. The load is an additive model — the
 * exact formula is part of the contract so tests can regress against it:
 *
 *   load(t) = base_mw
 *           + daily_amp  * sin(2 pi hour_of_day(t) / 24)
 *           + weekly_amp * sin(2 pi hour_of_week(t) / 168)
 *           + annual_amp * sin(2 pi (t mod 8760) / 8760)
 *           + weekday_offsets[day_of_week(t)]
 *           - holiday_drop * is_holiday(t)
 *           + temp_coupling * (temperature(t) - 15)
 *           + noise,  noise ~ N(0, noise_std^2)
 *
 * with t counted in hours from the series start and hour_of_week zero
 * at Monday 00:00. Temperature follows
 *
 *   temperature(t) = 15 - 10 cos(2 pi (t mod 8760) / 8760)
 *                  + 4 sin(2 pi hour_of_day(t) / 24) + N(0, 0.5^2)
 *
 * All randomness comes from the seeded counter generator (see Rng), so
 * a config maps to exactly one output. Synthetic holidays are 12 fixed
 * dates per year. Configs that could produce a nonpositive load are
 * rejected.
 */
struct SynthConfig {
    double base_mw = 100.0;
    double daily_amp = 10.0;
    double weekly_amp = 5.0;
    double annual_amp = 8.0;
    std::array<double, 7> weekday_offsets{}; // Monday first
    double holiday_drop = 0.0;
    double temp_coupling = 0.0;
    double noise_std = 0.0;
    std::size_t n_hours = 8760;
    std::uint64_t seed = 0;
    Date start{2015, 1, 1};
    int n_locations = 1;

    void validate() const;
};

inline constexpr double kSynthTempMean = 15.0;
inline constexpr double kSynthTempAnnualAmp = 10.0;
inline constexpr double kSynthTempDailyAmp = 4.0;
inline constexpr double kSynthTempNoiseStd = 0.5;

struct SynthData {
    TimeSeries load;
    TimeSeries temperature; // location 0, the channel coupled into the load
    CalendarInfo calendar;
    std::vector<WeatherData> weather;
    std::vector<Date> holidays;
};

SynthData generate(const SynthConfig& config);

/// The 12 fixed synthetic holiday dates of a year.
std::vector<Date> synth_holidays(int year);

/// Input-coordinate restriction for blinded-schema experiments.
std::vector<FeatureSample> restrict_inputs(std::span<const FeatureSample> samples,
                                           const std::vector<std::size_t>& indices,
                                           const std::string& schema_id);

inline constexpr std::size_t kTestbedInputDim = 51; // 24 + 24 + H + W + D
inline constexpr char kTestbedSchema[] = "reself-testbed/1";
inline constexpr char kTestbedBlindedSchema[] = "reself-testbed-blinded/1";

/**
 * Desk-scale testbed for the residual-learning premise: a series
 * dominated by weekday offsets plus samples in a compact schema
 * [trailing-week mean day profile (24), temp(d) (24), holiday, weekend,
 * day-of-week]. blinded_indices drops the three calendar entries. The
 * load block averages the previous seven days per hour, which cancels
 * the weekday offsets, and no single-day lag is present - so a stage-1
 * model trained on the blinded view cannot recover the day-of-week
 * effect and its residuals carry systematic weekday structure. The
 * null variant (weekday offsets all zero) keeps everything else
 * identical.
 */
struct ReselfTestbed {
    SynthData data;
    std::vector<FeatureSample> train;
    std::vector<FeatureSample> validation;
    std::vector<FeatureSample> test;
    std::vector<std::size_t> blinded_indices;
    std::size_t full_dim = kTestbedInputDim;
};

ReselfTestbed reself_testbed(std::uint64_t seed, bool with_weekday_offsets = true);

} // namespace enercast

#endif // ENERCAST_SYNTH_HPP
