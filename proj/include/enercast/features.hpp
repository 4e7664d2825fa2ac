#ifndef ENERCAST_FEATURES_HPP
#define ENERCAST_FEATURES_HPP

#include "enercast/calendar.hpp"
#include "enercast/csv.hpp"
#include "enercast/sample.hpp"
#include "enercast/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace enercast {

// Schema dimension constants; every built sample is checked against them.
inline constexpr std::size_t kDayAheadInputDim = 171;
inline constexpr std::size_t kYearAheadInputDim = 89;
inline constexpr std::size_t kMonthAheadInputDim = 115;

inline constexpr char kDayAheadSchema[] = "day-ahead/1";
inline constexpr char kYearAheadSchema[] = "year-ahead/1";
inline constexpr char kMonthAheadSchema[] = "month-ahead/1";

/// avg/std/min/max/skew of a value block. std uses the population
/// convention (divide by n), skew is m3 / m2^1.5 with biased moments
/// and defined as 0 when the variance is below 1e-12.
struct SummaryStats {
    double avg = 0;
    double std = 0;
    double min = 0;
    double max = 0;
    double skew = 0;
};

/// Sample skewness m3 / m2^(3/2) with biased moments; 0 for
/// near-constant input. Throws ValidationError for fewer than 3 values.
double skewness(std::span<const double> values);

SummaryStats summary_stats(std::span<const double> values);

/**
 * One-day-ahead input vector (dimension 171), laid out as
 *   load(d-1) load(d-7) load(d-28) temp(d-1) temp(d-7) temp(d-28)
 *   temp(d) | holiday weekend day-of-week
 * with 24 hourly values per block. The target is the 24 loads of day d
 * and the anchor the 24 loads of day d-7. Missing lag data raises
 * InsufficientHistoryError naming the lag; weather series are expected
 * to be gap-filled beforehand (see locf_fill).
 */
FeatureSample build_day_ahead(const TimeSeries& load, const TimeSeries& temperature,
                              const CalendarInfo& calendar, const Date& day,
                              bool with_target = true);

struct SampleSet {
    std::vector<FeatureSample> samples;
    std::size_t skipped = 0; // days dropped for missing history
};

/// Builds day-ahead samples for every day in [range.begin, range.end)
/// that has complete history, counting the rest as skipped.
SampleSet build_day_ahead_set(const TimeSeries& load, const TimeSeries& temperature,
                              const CalendarInfo& calendar, const DateRange& range);

/// Calendar-month aggregates of hourly series: consumption is the sum
/// over the month, temperature/humidity are monthly means.
struct MonthEntry {
    int year = 0;
    int month = 0;
    double consumption = 0;
    double temperature_mean = 0;
    double humidity_mean = 0;
    int season = 0;
    int holiday_count = 0;
    bool complete = false;
};

std::vector<MonthEntry> aggregate_monthly(const TimeSeries& load, const TimeSeries& temperature,
                                          const TimeSeries& humidity,
                                          const CalendarInfo& calendar);

/**
 * One-year-ahead task input (dimension 89): twelve-entry blocks for the
 * 12 months directly before month (year, month) — consumption,
 * temperature, humidity, season, holiday count, month index, year —
 * oldest month first, followed by the consumption summary statistics.
 * Target: consumption of month (year, month).
 */
FeatureSample build_year_ahead(std::span<const MonthEntry> months, int year, int month);

/// Civil-day aggregates of hourly series; consumption is the day total,
/// temperature/humidity are daily means.
struct DayEntry {
    Date date;
    double consumption = 0;
    double temperature_mean = 0;
    double humidity_mean = 0;
    bool complete = false;
};

std::vector<DayEntry> aggregate_daily(const TimeSeries& load, const TimeSeries& temperature,
                                      const TimeSeries& humidity);

/**
 * One-month-ahead task input (dimension 115): ten-entry blocks for the
 * 10 days directly before day d — consumption, temperature, humidity,
 * season, year, week, day-of-week, day-of-year, day-of-month, holiday,
 * month — oldest day first, plus the consumption summary statistics.
 * Target: total consumption of the 30 days starting at d.
 */
FeatureSample build_month_ahead(std::span<const DayEntry> days, const CalendarInfo& calendar,
                                const Date& day);

inline constexpr int kMonthAheadTargetDays = 30;

/**
 * Windowed scenario sample: the input is input_hours of load ending at
 * t0 + input_hours, concatenated with every weather channel of every
 * location over the prediction window (the forecast for the target
 * span); the gap_hours in between contribute nothing. The target is the
 * horizon_hours of load after the gap.
 */
FeatureSample build_window(const TimeSeries& load, std::span<const WeatherData> weather,
                           int input_hours, int gap_hours, int horizon_hours, HourIndex t0);

std::string window_schema_id(int input_hours, int gap_hours, int horizon_hours,
                             std::size_t n_locations);

/// Number of stride-spaced windows that fit into series_len hours.
std::size_t window_count(std::size_t series_len, int input_hours, int gap_hours,
                         int horizon_hours, int stride_hours);

} // namespace enercast

#endif // ENERCAST_FEATURES_HPP
