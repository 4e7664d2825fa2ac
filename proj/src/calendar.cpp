#include "enercast/calendar.hpp"

#include "enercast/errors.hpp"

#include <algorithm>

namespace enercast {

CalendarInfo CalendarInfo::build(const Date& start, std::int64_t n_days,
                                 const std::vector<Date>& holidays) {
    std::vector<Date> sorted = holidays;
    std::sort(sorted.begin(), sorted.end());

    CalendarInfo cal;
    cal.start_ = start;
    cal.days_.reserve(static_cast<std::size_t>(n_days));
    std::int64_t day0 = days_from_civil(start);
    for (std::int64_t i = 0; i < n_days; ++i) {
        Date d = civil_from_days(day0 + i);
        DayInfo info;
        info.day_of_week = day_of_week(d);
        info.is_weekend = info.day_of_week >= 5 ? 1 : 0;
        info.is_holiday = std::binary_search(sorted.begin(), sorted.end(), d) ? 1 : 0;
        info.day_of_month = d.day;
        info.day_of_year = day_of_year(d);
        info.week_of_year = iso_week_of_year(d);
        info.month = d.month;
        info.season = season_of_month(d.month);
        info.year = d.year;
        cal.days_.push_back(info);
    }
    return cal;
}

bool CalendarInfo::covers(const Date& d) const {
    std::int64_t i = days_from_civil(d) - days_from_civil(start_);
    return i >= 0 && i < n_days();
}

const DayInfo& CalendarInfo::at(const Date& d) const {
    std::int64_t i = days_from_civil(d) - days_from_civil(start_);
    if (i < 0 || i >= n_days()) {
        throw RangeError("date " + format_date(d) + " outside calendar span starting " +
                         format_date(start_));
    }
    return days_[static_cast<std::size_t>(i)];
}

} // namespace enercast
