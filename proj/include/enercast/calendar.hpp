#ifndef ENERCAST_CALENDAR_HPP
#define ENERCAST_CALENDAR_HPP

#include "enercast/time.hpp"

#include <cstdint>
#include <vector>

namespace enercast {

/// Per-day calendar flags used as model features.
struct DayInfo {
    std::uint8_t is_holiday = 0;
    std::uint8_t is_weekend = 0;
    int day_of_week = 0;  // Monday = 0
    int day_of_month = 1;
    int day_of_year = 1;
    int week_of_year = 1;
    int month = 1;  // 1-12
    int season = 0; // Dec-Feb = 0, Mar-May = 1, Jun-Aug = 2, Sep-Nov = 3
    int year = 1970;
};

/**
 * Calendar metadata for a contiguous run of civil days. Holidays come
 * from an external date list; everything else is derived from the date.
 */
class CalendarInfo {
public:
    CalendarInfo() = default;

    static CalendarInfo build(const Date& start, std::int64_t n_days,
                              const std::vector<Date>& holidays);

    bool covers(const Date& d) const;
    /// Throws RangeError when the date is outside the covered span.
    const DayInfo& at(const Date& d) const;

    const Date& start() const { return start_; }
    std::int64_t n_days() const { return static_cast<std::int64_t>(days_.size()); }

private:
    Date start_;
    std::vector<DayInfo> days_;
};

} // namespace enercast

#endif // ENERCAST_CALENDAR_HPP
