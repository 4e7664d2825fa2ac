#ifndef ENERCAST_SERIES_HPP
#define ENERCAST_SERIES_HPP

#include "enercast/time.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace enercast {

enum class Channel { load, temperature, humidity, wind_speed, cloudiness };

std::string channel_name(Channel c);
Channel channel_from_name(const std::string& name);

/**
 * Hourly time series with a missing-value mask.
 *
 * Values are indexed by consecutive hours starting at start_hour (hours
 * since the Unix epoch, UTC). Missing hours hold NaN in values and 1 in
 * the mask; unmasked positions are always finite. Instances are treated
 * as immutable once built; operations that "modify" a series return a
 * new one.
 */
struct TimeSeries {
    HourIndex start_hour = 0;
    Channel channel = Channel::load;
    std::vector<double> values;
    std::vector<std::uint8_t> missing;

    std::size_t size() const { return values.size(); }
    HourIndex end_hour() const { return start_hour + static_cast<HourIndex>(values.size()); }
    bool is_missing(std::size_t i) const { return missing[i] != 0; }
    double at(std::size_t i) const { return values[i]; }
    HourIndex hour_at(std::size_t i) const { return start_hour + static_cast<HourIndex>(i); }

    /// Index of an absolute hour, if it falls inside the series.
    std::optional<std::size_t> index_of(HourIndex h) const {
        if (h < start_hour || h >= end_hour()) return std::nullopt;
        return static_cast<std::size_t>(h - start_hour);
    }

    std::size_t missing_count() const;

    /// Builds a fully observed series; values must all be finite.
    static TimeSeries from_values(HourIndex start_hour, Channel channel,
                                  std::vector<double> values);

    /// Sub-series covering hours [from, to). Throws RangeError when the
    /// requested span is not inside this series.
    TimeSeries slice_hours(HourIndex from, HourIndex to) const;

    /// The 24 values of a civil day. Throws RangeError when outside the
    /// span and InsufficientHistoryError when any hour is masked
    /// (message includes `label`).
    std::vector<double> day_values(const Date& day, const std::string& label) const;

    void check_invariants() const;
};

/// Half-open civil date range [begin, end).
struct DateRange {
    Date begin;
    Date end;

    std::int64_t n_days() const { return days_from_civil(end) - days_from_civil(begin); }
    bool contains(const Date& d) const { return d >= begin && d < end; }
};

/// Chronological train/validation/test ranges; ranges must be disjoint
/// and ordered train < validation < test.
struct SplitSpec {
    DateRange train;
    DateRange validation;
    DateRange test;

    void validate() const;
};

struct SplitResult {
    TimeSeries train;
    TimeSeries validation;
    TimeSeries test;
};

/// Cuts a series into chronological train/validation/test sub-series.
/// Every hour of the covered span lands in exactly one output.
SplitResult split(const TimeSeries& series, const SplitSpec& spec);

/// Last-observation-carried-forward fill for weather channels. An entry
/// stays masked when no observation exists within max_gap_hours before it.
TimeSeries locf_fill(const TimeSeries& series, int max_gap_hours = 24);

} // namespace enercast

#endif // ENERCAST_SERIES_HPP
