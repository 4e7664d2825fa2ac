#include "enercast/features.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace enercast {

double skewness(std::span<const double> values) {
    if (values.size() < 3) {
        throw ValidationError("skewness needs at least 3 values, got " +
                              std::to_string(values.size()));
    }
    const double n = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0, m3 = 0;
    for (double v : values) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 < 1e-12) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

SummaryStats summary_stats(std::span<const double> values) {
    SummaryStats s;
    const double n = static_cast<double>(values.size());
    s.min = values[0];
    s.max = values[0];
    for (double v : values) {
        s.avg += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.avg /= n;
    double m2 = 0;
    for (double v : values) {
        double d = v - s.avg;
        m2 += d * d;
    }
    s.std = std::sqrt(m2 / n);
    s.skew = skewness(values);
    return s;
}

namespace {

void append(std::vector<double>& out, std::span<const double> block) {
    out.insert(out.end(), block.begin(), block.end());
}

void push_stats(std::vector<double>& out, const SummaryStats& s) {
    out.push_back(s.avg);
    out.push_back(s.std);
    out.push_back(s.min);
    out.push_back(s.max);
    out.push_back(s.skew);
}

} // namespace

FeatureSample build_day_ahead(const TimeSeries& load, const TimeSeries& temperature,
                              const CalendarInfo& calendar, const Date& day, bool with_target) {
    const DayInfo& info = calendar.at(day);

    FeatureSample s;
    s.day_id = day;
    s.schema_id = kDayAheadSchema;
    s.target_start_hour = hour_index_of(day);
    s.input.reserve(kDayAheadInputDim);
    for (int lag : {1, 7, 28}) {
        append(s.input, load.day_values(add_days(day, -lag), "load(d-" + std::to_string(lag) + ")"));
    }
    for (int lag : {1, 7, 28}) {
        append(s.input,
               temperature.day_values(add_days(day, -lag), "temp(d-" + std::to_string(lag) + ")"));
    }
    append(s.input, temperature.day_values(day, "temp(d) forecast"));
    s.input.push_back(info.is_holiday);
    s.input.push_back(info.is_weekend);
    s.input.push_back(info.day_of_week);
    if (s.input.size() != kDayAheadInputDim) {
        throw ShapeError("day-ahead input dimension " + std::to_string(s.input.size()));
    }

    s.anchor = load.day_values(add_days(day, -7), "anchor load(d-7)");
    if (with_target) s.target = load.day_values(day, "target load(d)");
    return s;
}

SampleSet build_day_ahead_set(const TimeSeries& load, const TimeSeries& temperature,
                              const CalendarInfo& calendar, const DateRange& range) {
    SampleSet set;
    for (Date d = range.begin; d < range.end; d = add_days(d, 1)) {
        try {
            set.samples.push_back(build_day_ahead(load, temperature, calendar, d));
        } catch (const InsufficientHistoryError&) {
            ++set.skipped;
        }
    }
    return set;
}

std::vector<MonthEntry> aggregate_monthly(const TimeSeries& load, const TimeSeries& temperature,
                                          const TimeSeries& humidity,
                                          const CalendarInfo& calendar) {
    Date first = date_of_hour(load.start_hour);
    if (first.day != 1 || hour_of_day(load.start_hour) != 0) {
        // Skip the partial month at the start.
        first = first.month == 12 ? Date{first.year + 1, 1, 1} : Date{first.year, first.month + 1, 1};
    }
    std::vector<MonthEntry> out;
    for (Date m = first;; m = m.month == 12 ? Date{m.year + 1, 1, 1} : Date{m.year, m.month + 1, 1}) {
        HourIndex h0 = hour_index_of(m);
        HourIndex h1 = hour_index_of(m.month == 12 ? Date{m.year + 1, 1, 1}
                                                   : Date{m.year, m.month + 1, 1});
        if (h1 > load.end_hour()) break;
        MonthEntry e;
        e.year = m.year;
        e.month = m.month;
        e.season = season_of_month(m.month);
        e.complete = true;
        double t_sum = 0, hu_sum = 0;
        for (HourIndex h = h0; h < h1; ++h) {
            auto li = load.index_of(h);
            auto ti = temperature.index_of(h);
            auto hi = humidity.index_of(h);
            if (!li || !ti || !hi || load.is_missing(*li) || temperature.is_missing(*ti) ||
                humidity.is_missing(*hi)) {
                e.complete = false;
                break;
            }
            e.consumption += load.at(*li);
            t_sum += temperature.at(*ti);
            hu_sum += humidity.at(*hi);
        }
        const double n_hours = static_cast<double>(h1 - h0);
        if (e.complete) {
            e.temperature_mean = t_sum / n_hours;
            e.humidity_mean = hu_sum / n_hours;
            for (Date d = m; d.month == m.month && d.year == m.year; d = add_days(d, 1)) {
                if (calendar.covers(d) && calendar.at(d).is_holiday) ++e.holiday_count;
            }
        }
        out.push_back(e);
    }
    return out;
}

FeatureSample build_year_ahead(std::span<const MonthEntry> months, int year, int month) {
    auto it = std::find_if(months.begin(), months.end(), [&](const MonthEntry& e) {
        return e.year == year && e.month == month;
    });
    if (it == months.end()) {
        throw InsufficientHistoryError("month " + std::to_string(year) + "-" +
                                       std::to_string(month) + " not covered by the aggregates");
    }
    auto idx = static_cast<std::size_t>(it - months.begin());
    if (idx < 12) {
        throw InsufficientHistoryError("need 12 complete months before " + std::to_string(year) +
                                       "-" + std::to_string(month));
    }
    for (std::size_t i = idx - 12; i <= idx; ++i) {
        if (!months[i].complete) {
            throw InsufficientHistoryError("month " + std::to_string(months[i].year) + "-" +
                                           std::to_string(months[i].month) +
                                           " has missing hours");
        }
    }

    FeatureSample s;
    s.day_id = Date{year, month, 1};
    s.schema_id = kYearAheadSchema;
    s.target_start_hour = hour_index_of(s.day_id);
    s.input.reserve(kYearAheadInputDim);
    std::vector<double> consumption;
    for (std::size_t i = idx - 12; i < idx; ++i) consumption.push_back(months[i].consumption);
    append(s.input, consumption);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].temperature_mean);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].humidity_mean);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].season);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].holiday_count);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].month);
    for (std::size_t i = idx - 12; i < idx; ++i) s.input.push_back(months[i].year);
    push_stats(s.input, summary_stats(consumption));
    if (s.input.size() != kYearAheadInputDim) {
        throw ShapeError("year-ahead input dimension " + std::to_string(s.input.size()));
    }
    s.target = {months[idx].consumption};
    return s;
}

std::vector<DayEntry> aggregate_daily(const TimeSeries& load, const TimeSeries& temperature,
                                      const TimeSeries& humidity) {
    std::vector<DayEntry> out;
    HourIndex h = load.start_hour;
    if (hour_of_day(h) != 0) h += 24 - hour_of_day(h); // skip the partial first day
    for (; h + 24 <= load.end_hour(); h += 24) {
        DayEntry e;
        e.date = date_of_hour(h);
        e.complete = true;
        double t_sum = 0, hu_sum = 0;
        for (HourIndex hh = h; hh < h + 24; ++hh) {
            auto li = load.index_of(hh);
            auto ti = temperature.index_of(hh);
            auto hi = humidity.index_of(hh);
            if (!li || !ti || !hi || load.is_missing(*li) || temperature.is_missing(*ti) ||
                humidity.is_missing(*hi)) {
                e.complete = false;
                break;
            }
            e.consumption += load.at(*li);
            t_sum += temperature.at(*ti);
            hu_sum += humidity.at(*hi);
        }
        if (e.complete) {
            e.temperature_mean = t_sum / 24.0;
            e.humidity_mean = hu_sum / 24.0;
        }
        out.push_back(e);
    }
    return out;
}

FeatureSample build_month_ahead(std::span<const DayEntry> days, const CalendarInfo& calendar,
                                const Date& day) {
    auto it = std::find_if(days.begin(), days.end(),
                           [&](const DayEntry& e) { return e.date == day; });
    if (it == days.end()) {
        throw InsufficientHistoryError("day " + format_date(day) +
                                       " not covered by the aggregates");
    }
    auto idx = static_cast<std::size_t>(it - days.begin());
    if (idx < 10) {
        throw InsufficientHistoryError("need 10 complete days before " + format_date(day));
    }
    for (std::size_t i = idx - 10; i < idx; ++i) {
        if (!days[i].complete) {
            throw InsufficientHistoryError("day " + format_date(days[i].date) +
                                           " has missing hours");
        }
    }
    if (days.size() < idx + kMonthAheadTargetDays) {
        throw InsufficientHistoryError("need " + std::to_string(kMonthAheadTargetDays) +
                                       " target days from " + format_date(day));
    }
    double target = 0;
    for (std::size_t i = idx; i < idx + kMonthAheadTargetDays; ++i) {
        if (!days[i].complete) {
            throw InsufficientHistoryError("target day " + format_date(days[i].date) +
                                           " has missing hours");
        }
        target += days[i].consumption;
    }

    FeatureSample s;
    s.day_id = day;
    s.schema_id = kMonthAheadSchema;
    s.target_start_hour = hour_index_of(day);
    s.input.reserve(kMonthAheadInputDim);
    std::vector<double> consumption;
    for (std::size_t i = idx - 10; i < idx; ++i) consumption.push_back(days[i].consumption);
    append(s.input, consumption);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(days[i].temperature_mean);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(days[i].humidity_mean);
    auto day_info = [&](std::size_t i) -> const DayInfo& { return calendar.at(days[i].date); };
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).season);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).year);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).week_of_year);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).day_of_week);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).day_of_year);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).day_of_month);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).is_holiday);
    for (std::size_t i = idx - 10; i < idx; ++i) s.input.push_back(day_info(i).month);
    push_stats(s.input, summary_stats(consumption));
    if (s.input.size() != kMonthAheadInputDim) {
        throw ShapeError("month-ahead input dimension " + std::to_string(s.input.size()));
    }
    s.target = {target};
    return s;
}

std::string window_schema_id(int input_hours, int gap_hours, int horizon_hours,
                             std::size_t n_locations) {
    return "window/1:in" + std::to_string(input_hours) + ":gap" + std::to_string(gap_hours) +
           ":hor" + std::to_string(horizon_hours) + ":loc" + std::to_string(n_locations);
}

FeatureSample build_window(const TimeSeries& load, std::span<const WeatherData> weather,
                           int input_hours, int gap_hours, int horizon_hours, HourIndex t0) {
    if (input_hours < 1 || gap_hours < 0 || horizon_hours < 1) {
        throw ValidationError("window sizes must be positive (gap may be zero)");
    }
    const HourIndex pred_start = t0 + input_hours + gap_hours;
    const HourIndex pred_end = pred_start + horizon_hours;
    if (t0 < load.start_hour || pred_end > load.end_hour()) {
        throw RangeError("window [" + format_utc_hour(t0) + ", " + format_utc_hour(pred_end) +
                         ") outside series span");
    }

    auto hourly = [&](const TimeSeries& s, HourIndex from, HourIndex to, const char* what) {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(to - from));
        for (HourIndex h = from; h < to; ++h) {
            auto i = s.index_of(h);
            if (!i || s.is_missing(*i)) {
                throw RangeError(std::string(what) + " missing at " + format_utc_hour(h));
            }
            out.push_back(s.at(*i));
        }
        return out;
    };

    FeatureSample s;
    s.day_id = date_of_hour(pred_start);
    s.schema_id = window_schema_id(input_hours, gap_hours, horizon_hours, weather.size());
    s.target_start_hour = pred_start;
    append(s.input, hourly(load, t0, t0 + input_hours, "load"));
    for (const auto& w : weather) {
        for (Channel c : {Channel::temperature, Channel::humidity, Channel::wind_speed,
                          Channel::cloudiness}) {
            append(s.input, hourly(w.channel(c), pred_start, pred_end, "weather forecast"));
        }
    }
    s.target = hourly(load, pred_start, pred_end, "target load");
    return s;
}

std::size_t window_count(std::size_t series_len, int input_hours, int gap_hours,
                         int horizon_hours, int stride_hours) {
    const auto span =
        static_cast<std::size_t>(input_hours) + static_cast<std::size_t>(gap_hours) +
        static_cast<std::size_t>(horizon_hours);
    if (stride_hours < 1) throw ValidationError("stride must be >= 1");
    if (series_len < span) return 0;
    return (series_len - span) / static_cast<std::size_t>(stride_hours) + 1;
}

} // namespace enercast
