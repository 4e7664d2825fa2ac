#include "enercast/series.hpp"

#include "enercast/errors.hpp"

#include <cmath>
#include <limits>

namespace enercast {

std::string channel_name(Channel c) {
    switch (c) {
        case Channel::load: return "load";
        case Channel::temperature: return "temperature";
        case Channel::humidity: return "humidity";
        case Channel::wind_speed: return "wind_speed";
        case Channel::cloudiness: return "cloudiness";
    }
    return "unknown";
}

Channel channel_from_name(const std::string& name) {
    if (name == "load") return Channel::load;
    if (name == "temperature") return Channel::temperature;
    if (name == "humidity") return Channel::humidity;
    if (name == "wind_speed") return Channel::wind_speed;
    if (name == "cloudiness") return Channel::cloudiness;
    throw FormatError("unknown channel name '" + name + "'");
}

std::size_t TimeSeries::missing_count() const {
    std::size_t n = 0;
    for (auto m : missing) n += m != 0;
    return n;
}

TimeSeries TimeSeries::from_values(HourIndex start_hour, Channel channel,
                                   std::vector<double> values) {
    TimeSeries s;
    s.start_hour = start_hour;
    s.channel = channel;
    s.missing.assign(values.size(), 0);
    s.values = std::move(values);
    s.check_invariants();
    return s;
}

TimeSeries TimeSeries::slice_hours(HourIndex from, HourIndex to) const {
    if (from < start_hour || to > end_hour() || from > to) {
        throw RangeError("slice [" + format_utc_hour(from) + ", " + format_utc_hour(to) +
                         ") outside series span [" + format_utc_hour(start_hour) + ", " +
                         format_utc_hour(end_hour()) + ")");
    }
    TimeSeries out;
    out.start_hour = from;
    out.channel = channel;
    auto a = static_cast<std::size_t>(from - start_hour);
    auto b = static_cast<std::size_t>(to - start_hour);
    out.values.assign(values.begin() + a, values.begin() + b);
    out.missing.assign(missing.begin() + a, missing.begin() + b);
    return out;
}

std::vector<double> TimeSeries::day_values(const Date& day, const std::string& label) const {
    HourIndex h0 = hour_index_of(day);
    if (h0 < start_hour || h0 + 24 > end_hour()) {
        throw InsufficientHistoryError("day " + format_date(day) + " (" + label +
                                       ") outside series span");
    }
    std::vector<double> out(24);
    for (int h = 0; h < 24; ++h) {
        auto i = static_cast<std::size_t>(h0 + h - start_hour);
        if (is_missing(i)) {
            throw InsufficientHistoryError("day " + format_date(day) + " (" + label +
                                           ") has missing hour " + std::to_string(h));
        }
        out[static_cast<std::size_t>(h)] = values[i];
    }
    return out;
}

void TimeSeries::check_invariants() const {
    if (values.size() != missing.size()) {
        throw ShapeError("values/missing length mismatch");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!missing[i] && !std::isfinite(values[i])) {
            throw ValidationError("non-finite value at unmasked position " + std::to_string(i));
        }
    }
}

void SplitSpec::validate() const {
    for (const auto* r : {&train, &validation, &test}) {
        if (r->end < r->begin) {
            throw ValidationError("split range ends before it begins: " + format_date(r->begin) +
                                  " .. " + format_date(r->end));
        }
    }
    if (!(train.end <= validation.begin && validation.end <= test.begin)) {
        throw ValidationError("split ranges must be disjoint and ordered train < validation < test");
    }
}

SplitResult split(const TimeSeries& series, const SplitSpec& spec) {
    spec.validate();
    auto cut = [&](const DateRange& r) {
        HourIndex from = hour_index_of(r.begin);
        HourIndex to = hour_index_of(r.end);
        if (from < series.start_hour || to > series.end_hour()) {
            throw RangeError("split range " + format_date(r.begin) + " .. " + format_date(r.end) +
                             " outside series span");
        }
        return series.slice_hours(from, to);
    };
    return SplitResult{cut(spec.train), cut(spec.validation), cut(spec.test)};
}

TimeSeries locf_fill(const TimeSeries& series, int max_gap_hours) {
    TimeSeries out = series;
    std::int64_t last_seen = -1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out.is_missing(i)) {
            last_seen = static_cast<std::int64_t>(i);
            continue;
        }
        if (last_seen >= 0 &&
            static_cast<std::int64_t>(i) - last_seen <= max_gap_hours) {
            out.values[i] = out.values[static_cast<std::size_t>(last_seen)];
            out.missing[i] = 0;
        }
    }
    return out;
}

} // namespace enercast
