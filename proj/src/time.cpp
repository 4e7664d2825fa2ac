#include "enercast/time.hpp"

#include "enercast/errors.hpp"

#include <charconv>
#include <cstdio>

namespace enercast {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

// Low-level civil <-> day-count conversions, shifted so day 0 is 1970-01-01.
std::int64_t days_from_civil(const Date& d) {
    std::int64_t y = d.year;
    y -= d.month <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (static_cast<unsigned>(d.month) + (d.month > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d.day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

HourIndex hour_index_of(const Date& d, int hour) {
    return days_from_civil(d) * 24 + hour;
}

Date date_of_hour(HourIndex h) {
    std::int64_t days = h >= 0 ? h / 24 : (h - 23) / 24;
    return civil_from_days(days);
}

int hour_of_day(HourIndex h) {
    std::int64_t r = h % 24;
    if (r < 0) r += 24;
    return static_cast<int>(r);
}

int day_of_week(const Date& d) {
    // 1970-01-01 was a Thursday (3 with Monday = 0).
    std::int64_t days = days_from_civil(d);
    std::int64_t dow = (days + 3) % 7;
    if (dow < 0) dow += 7;
    return static_cast<int>(dow);
}

int day_of_year(const Date& d) {
    return static_cast<int>(days_from_civil(d) - days_from_civil(Date{d.year, 1, 1})) + 1;
}

int iso_week_of_year(const Date& d) {
    // ISO week: week 1 contains the year's first Thursday.
    int doy = day_of_year(d);
    int dow = day_of_week(d); // Monday = 0
    int week = (doy - dow + 9) / 7;
    if (week < 1) {
        int prev = d.year - 1;
        return iso_week_of_year(Date{prev, 12, 31});
    }
    if (week == 53) {
        // Week 53 only exists when Jan 1 of next year is a Friday (dow 4)
        // or the year is leap and Jan 1 falls on Saturday.
        Date dec31{d.year, 12, 31};
        int dow31 = day_of_week(dec31);
        if (dow31 < 3) return 1; // Mon/Tue/Wed belong to next year's week 1
    }
    return week;
}

int season_of_month(int month) {
    if (month == 12 || month <= 2) return 0;
    if (month <= 5) return 1;
    if (month <= 8) return 2;
    return 3;
}

Date add_days(const Date& d, std::int64_t n) {
    return civil_from_days(days_from_civil(d) + n);
}

namespace {

int parse_int_field(std::string_view s, std::size_t pos, std::size_t len, std::string_view what) {
    if (pos + len > s.size()) {
        throw FormatError("timestamp too short while reading " + std::string(what) + ": '" +
                          std::string(s) + "'");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
    if (ec != std::errc{} || ptr != s.data() + pos + len) {
        throw FormatError("bad " + std::string(what) + " in '" + std::string(s) + "'");
    }
    return value;
}

void expect_char(std::string_view s, std::size_t pos, char c) {
    if (pos >= s.size() || s[pos] != c) {
        throw FormatError("expected '" + std::string(1, c) + "' at position " +
                          std::to_string(pos) + " in '" + std::string(s) + "'");
    }
}

} // namespace

Date parse_date(std::string_view s) {
    if (s.size() != 10) throw FormatError("bad date '" + std::string(s) + "', expected YYYY-MM-DD");
    int y = parse_int_field(s, 0, 4, "year");
    expect_char(s, 4, '-');
    int m = parse_int_field(s, 5, 2, "month");
    expect_char(s, 7, '-');
    int d = parse_int_field(s, 8, 2, "day");
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
        throw FormatError("date out of range: '" + std::string(s) + "'");
    }
    return Date{y, m, d};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::int64_t parse_utc_timestamp(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SSZ (also accepts a space separator and +00:00).
    if (s.size() < 19) throw FormatError("timestamp too short: '" + std::string(s) + "'");
    Date d = parse_date(s.substr(0, 10));
    if (s[10] != 'T' && s[10] != ' ') {
        throw FormatError("expected 'T' separator in '" + std::string(s) + "'");
    }
    int hh = parse_int_field(s, 11, 2, "hour");
    expect_char(s, 13, ':');
    int mm = parse_int_field(s, 14, 2, "minute");
    expect_char(s, 16, ':');
    int ss = parse_int_field(s, 17, 2, "second");
    if (hh > 23 || mm > 59 || ss > 59) {
        throw FormatError("time out of range: '" + std::string(s) + "'");
    }
    std::string_view tail = s.substr(19);
    if (!(tail.empty() || tail == "Z" || tail == "+00:00")) {
        throw FormatError("timestamps must be UTC ('Z' or '+00:00'): '" + std::string(s) + "'");
    }
    return (days_from_civil(d) * 24 + hh) * 3600 + mm * 60 + ss;
}

std::string format_utc_hour(HourIndex h) {
    Date d = date_of_hour(h);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", d.year, d.month, d.day,
                  hour_of_day(h));
    return buf;
}

} // namespace enercast
