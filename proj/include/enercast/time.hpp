#ifndef ENERCAST_TIME_HPP
#define ENERCAST_TIME_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace enercast {

/// Civil UTC date. All series and calendars in this library are UTC-only.
struct Date {
    int year = 1970;
    int month = 1; // 1-12
    int day = 1;   // 1-31

    friend bool operator==(const Date&, const Date&) = default;
    friend auto operator<=>(const Date& a, const Date& b) {
        if (a.year != b.year) return a.year <=> b.year;
        if (a.month != b.month) return a.month <=> b.month;
        return a.day <=> b.day;
    }
};

/// Hours since the Unix epoch; the index space of every TimeSeries.
using HourIndex = std::int64_t;

// Civil calendar arithmetic (proleptic Gregorian, UTC).
bool is_leap_year(int year);
int days_in_month(int year, int month);
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days_since_epoch);

HourIndex hour_index_of(const Date& d, int hour_of_day = 0);
Date date_of_hour(HourIndex h);
int hour_of_day(HourIndex h);

/// Day of week with Monday = 0 ... Sunday = 6.
int day_of_week(const Date& d);
int day_of_year(const Date& d);
/// ISO-8601 week number (1-53).
int iso_week_of_year(const Date& d);
/// Dec-Feb = 0, Mar-May = 1, Jun-Aug = 2, Sep-Nov = 3.
int season_of_month(int month);

Date add_days(const Date& d, std::int64_t n);

/// Parses "YYYY-MM-DD". Throws FormatError on malformed input.
Date parse_date(std::string_view s);
std::string format_date(const Date& d);

/// Parses an ISO-8601 UTC timestamp "YYYY-MM-DDTHH:MM:SSZ".
/// Returns seconds since epoch. Throws FormatError on malformed input
/// or non-UTC offsets.
std::int64_t parse_utc_timestamp(std::string_view s);

/// Formats an hour index as "YYYY-MM-DDTHH:00:00Z".
std::string format_utc_hour(HourIndex h);

} // namespace enercast

#endif // ENERCAST_TIME_HPP
