#include "enercast/calendar.hpp"
#include "enercast/csv.hpp"
#include "enercast/errors.hpp"
#include "enercast/normalize.hpp"
#include "enercast/rng.hpp"
#include "enercast/series.hpp"
#include "enercast/time.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>
#include <limits>
#include <set>

using namespace enercast;
using testutil::TempDir;

namespace {

std::string hourly_load_csv(HourIndex start, const std::vector<std::pair<int, double>>& rows) {
    std::string out = "timestamp,load_mw\n";
    for (const auto& [offset, value] : rows) {
        out += format_utc_hour(start + offset) + "," + format_double(value) + "\n";
    }
    return out;
}

} // namespace

TEST_SUITE_BEGIN("dataset");

TEST_CASE("civil time arithmetic") {
    CHECK(days_from_civil(Date{1970, 1, 1}) == 0);
    CHECK(civil_from_days(0) == Date{1970, 1, 1});
    CHECK(day_of_week(Date{2015, 1, 1}) == 3);  // Thursday
    CHECK(day_of_week(Date{2024, 1, 1}) == 0);  // Monday
    CHECK(is_leap_year(2016));
    CHECK(!is_leap_year(2100));
    CHECK(days_in_month(2016, 2) == 29);
    CHECK(day_of_year(Date{2016, 12, 31}) == 366);
    CHECK(season_of_month(12) == 0);
    CHECK(season_of_month(3) == 1);
    CHECK(season_of_month(8) == 2);
    CHECK(season_of_month(11) == 3);
    CHECK(iso_week_of_year(Date{2015, 1, 1}) == 1);
    CHECK(iso_week_of_year(Date{2016, 1, 1}) == 53); // Friday, belongs to 2015's week 53
    CHECK(add_days(Date{2016, 2, 28}, 1) == Date{2016, 2, 29});
    CHECK(parse_date("2016-02-29") == Date{2016, 2, 29});
    CHECK_THROWS_AS(parse_date("2015-02-29"), FormatError);
    CHECK(format_date(Date{2016, 2, 29}) == "2016-02-29");
    CHECK(parse_utc_timestamp("2015-01-01T00:00:00Z") == days_from_civil(Date{2015, 1, 1}) * 86400);
    CHECK_THROWS_AS(parse_utc_timestamp("2015-01-01T00:00:00+02:00"), FormatError);
}

TEST_CASE("ingest of 48 well-formed rows") {
    TempDir dir("ingest48");
    HourIndex start = hour_index_of(Date{2015, 3, 1});
    std::vector<std::pair<int, double>> rows;
    for (int h = 0; h < 48; ++h) rows.emplace_back(h, 100.0 + h);
    testutil::write_file(dir.file("load.csv"), hourly_load_csv(start, rows));
    auto series = ingest_load_csv(dir.file("load.csv"));
    CHECK(series.size() == 48);
    CHECK(series.missing_count() == 0);
    CHECK(series.start_hour == start);
    CHECK(series.at(5) == 105.0);
}

TEST_CASE("absent hours become masked entries") {
    TempDir dir("ingest_gap");
    HourIndex start = hour_index_of(Date{2015, 3, 1});
    std::vector<std::pair<int, double>> rows;
    for (int h = 0; h < 48; ++h) {
        if (h == 10 || h == 11 || h == 30) continue;
        rows.emplace_back(h, 100.0 + h);
    }
    testutil::write_file(dir.file("load.csv"), hourly_load_csv(start, rows));
    auto series = ingest_load_csv(dir.file("load.csv"));
    CHECK(series.size() == 48);
    CHECK(series.missing_count() == 3);
    CHECK(series.is_missing(10));
    CHECK(series.is_missing(30));
    CHECK(!series.is_missing(12));
}

TEST_CASE("format errors carry line numbers") {
    TempDir dir("ingest_bad");
    HourIndex start = hour_index_of(Date{2015, 3, 1});

    SUBCASE("duplicate timestamp") {
        testutil::write_file(dir.file("load.csv"),
                             hourly_load_csv(start, {{0, 1.0}, {1, 2.0}, {1, 3.0}}));
        CHECK_THROWS_WITH_AS(ingest_load_csv(dir.file("load.csv")),
                             doctest::Contains("line 4"), FormatError);
    }
    SUBCASE("out-of-order timestamp") {
        testutil::write_file(dir.file("load.csv"),
                             hourly_load_csv(start, {{5, 1.0}, {3, 2.0}}));
        CHECK_THROWS_WITH_AS(ingest_load_csv(dir.file("load.csv")),
                             doctest::Contains("out-of-order"), FormatError);
    }
    SUBCASE("unparsable value") {
        testutil::write_file(dir.file("load.csv"),
                             "timestamp,load_mw\n2015-03-01T00:00:00Z,abc\n");
        CHECK_THROWS_WITH_AS(ingest_load_csv(dir.file("load.csv")),
                             doctest::Contains("line 2"), FormatError);
    }
    SUBCASE("timestamp off the hour boundary") {
        testutil::write_file(dir.file("load.csv"),
                             "timestamp,load_mw\n2015-03-01T00:30:00Z,1.0\n");
        CHECK_THROWS_WITH_AS(ingest_load_csv(dir.file("load.csv")),
                             doctest::Contains("hour boundary"), FormatError);
    }
    SUBCASE("wrong header") {
        testutil::write_file(dir.file("load.csv"), "time,mw\n");
        CHECK_THROWS_AS(ingest_load_csv(dir.file("load.csv")), FormatError);
    }
}

TEST_CASE("ingest then export reproduces the unmasked values exactly") {
    TempDir dir("roundtrip");
    HourIndex start = hour_index_of(Date{2015, 6, 1});
    std::vector<std::pair<int, double>> rows;
    Rng rng(3);
    for (int h = 0; h < 72; ++h) {
        if (h % 17 == 5) continue;
        rows.emplace_back(h, rng.uniform(50.0, 150.0));
    }
    std::string original = hourly_load_csv(start, rows);
    testutil::write_file(dir.file("a.csv"), original);
    auto series = ingest_load_csv(dir.file("a.csv"));
    export_load_csv(series, dir.file("b.csv"));
    CHECK(testutil::read_file(dir.file("b.csv")) == original);
}

TEST_CASE("weather CSV ingest splits locations and channels") {
    TempDir dir("weather");
    HourIndex start = hour_index_of(Date{2015, 5, 1});
    std::string csv = "timestamp,location_id,temperature_c,humidity_pct,wind_speed_ms,cloudiness_pct\n";
    for (int h = 0; h < 24; ++h) {
        for (int loc : {2, 7}) {
            csv += format_utc_hour(start + h) + "," + std::to_string(loc) + "," +
                   format_double(10.0 + loc + h) + ",60,5,50\n";
        }
    }
    testutil::write_file(dir.file("weather.csv"), csv);
    auto weather = ingest_weather_csv(dir.file("weather.csv"));
    REQUIRE(weather.size() == 2);
    CHECK(weather[0].location_id == 2);
    CHECK(weather[1].location_id == 7);
    CHECK(weather[1].temperature.at(3) == 10.0 + 7 + 3);
    CHECK(weather[0].humidity.at(0) == 60.0);

    auto temp = ingest_csv(dir.file("weather.csv"), Channel::temperature, 7);
    CHECK(temp.at(0) == 17.0);
    CHECK_THROWS_AS(ingest_csv(dir.file("weather.csv"), Channel::temperature, 99), FormatError);

    export_weather_csv(weather, dir.file("back.csv"));
    CHECK(testutil::read_file(dir.file("back.csv")) == csv);
}

TEST_CASE("split partitions the covered span without leakage") {
    HourIndex start = hour_index_of(Date{2015, 1, 1});
    std::size_t n = static_cast<std::size_t>(
        (days_from_civil(Date{2018, 1, 1}) - days_from_civil(Date{2015, 1, 1})) * 24);
    auto series = testutil::make_series(start, n, [](std::size_t i) { return 100.0 + (i % 24); });

    SplitSpec spec;
    spec.train = {Date{2015, 1, 1}, Date{2016, 1, 1}};
    spec.validation = {Date{2016, 1, 1}, Date{2017, 1, 1}};
    spec.test = {Date{2017, 1, 1}, Date{2018, 1, 1}};
    auto result = split(series, spec);

    CHECK(result.train.size() + result.validation.size() + result.test.size() == n);
    // 2016 is a leap year: calendar arithmetic fixes the exact hour counts.
    CHECK(result.train.size() == 365u * 24);
    CHECK(result.validation.size() == 366u * 24);
    CHECK(result.test.size() == 365u * 24);

    std::set<HourIndex> seen;
    for (const TimeSeries* part : {&result.train, &result.validation, &result.test}) {
        for (std::size_t i = 0; i < part->size(); ++i) {
            auto [_, inserted] = seen.insert(part->hour_at(i));
            CHECK(inserted); // no hour lands in two splits
        }
    }
    CHECK(seen.size() == n);
}

TEST_CASE("empty validation range is legal") {
    HourIndex start = hour_index_of(Date{2015, 1, 1});
    auto series = testutil::make_series(start, 90 * 24, [](std::size_t) { return 1.0; });
    SplitSpec spec;
    spec.train = {Date{2015, 1, 1}, Date{2015, 2, 1}};
    spec.validation = {Date{2015, 2, 1}, Date{2015, 2, 1}};
    spec.test = {Date{2015, 2, 1}, Date{2015, 3, 1}};
    auto result = split(series, spec);
    CHECK(result.validation.size() == 0);
    CHECK(result.train.size() == 31u * 24);
}

TEST_CASE("split outside the span raises a range error") {
    HourIndex start = hour_index_of(Date{2015, 1, 1});
    auto series = testutil::make_series(start, 10 * 24, [](std::size_t) { return 1.0; });
    SplitSpec spec;
    spec.train = {Date{2014, 12, 1}, Date{2015, 1, 5}};
    spec.validation = {Date{2015, 1, 5}, Date{2015, 1, 6}};
    spec.test = {Date{2015, 1, 6}, Date{2015, 1, 10}};
    CHECK_THROWS_AS(split(series, spec), RangeError);
}

TEST_CASE("misordered split ranges are rejected") {
    SplitSpec spec;
    spec.train = {Date{2015, 6, 1}, Date{2015, 7, 1}};
    spec.validation = {Date{2015, 5, 1}, Date{2015, 6, 1}};
    spec.test = {Date{2015, 7, 1}, Date{2015, 8, 1}};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("normalizer basics") {
    SUBCASE("constant column maps to zeros") {
        std::vector<std::vector<double>> rows(10, std::vector<double>{3.5, 7.0});
        auto n = Normalizer::fit(rows);
        auto z = n.apply(rows[0]);
        CHECK(z[0] == 0.0);
        CHECK(z[1] == 0.0);
    }
    SUBCASE("apply then invert is the identity") {
        Rng rng(5);
        std::vector<std::vector<double>> rows(50, std::vector<double>(6));
        for (auto& r : rows) {
            for (double& v : r) v = rng.uniform(-100.0, 100.0);
        }
        auto n = Normalizer::fit(rows);
        for (const auto& r : rows) {
            auto back = n.invert(n.apply(r));
            for (std::size_t j = 0; j < r.size(); ++j) {
                CHECK(std::fabs(back[j] - r[j]) < 1e-10);
            }
        }
    }
    SUBCASE("standard-normal column standardizes") {
        Rng rng(6);
        std::vector<std::vector<double>> rows(10000, std::vector<double>(1));
        for (auto& r : rows) r[0] = rng.normal();
        auto n = Normalizer::fit(rows);
        double mean = 0, var = 0;
        for (const auto& r : rows) mean += n.apply(r)[0];
        mean /= 10000;
        for (const auto& r : rows) {
            double z = n.apply(r)[0];
            var += (z - mean) * (z - mean);
        }
        var /= 10000;
        CHECK(std::fabs(mean) < 0.05);
        CHECK(std::fabs(std::sqrt(var) - 1.0) < 0.05);
    }
    SUBCASE("parameters come from the fitted rows only") {
        std::vector<std::vector<double>> train_rows(20, std::vector<double>{1.0});
        for (std::size_t i = 0; i < train_rows.size(); ++i) train_rows[i][0] = double(i);
        auto n = Normalizer::fit(train_rows);
        auto mean_before = n.mean();
        auto std_before = n.stddev();
        std::vector<double> test_row{1e9}; // wildly off-distribution
        (void)n.apply(test_row);
        CHECK(n.mean() == mean_before);
        CHECK(n.stddev() == std_before);
    }
}

TEST_CASE("series invariants reject NaN in unmasked positions") {
    std::vector<double> values{1.0, std::numeric_limits<double>::quiet_NaN(), 3.0};
    CHECK_THROWS_AS(TimeSeries::from_values(0, Channel::load, values), ValidationError);
    TimeSeries s = testutil::make_series(0, 3, [](std::size_t i) { return double(i); });
    s.missing[1] = 1;
    s.values[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_NOTHROW(s.check_invariants()); // masked NaN is fine
}

TEST_CASE("normalizer rejects empty fits and wrong dimensions") {
    std::vector<std::vector<double>> empty;
    CHECK_THROWS_AS(Normalizer::fit(empty), ValidationError);
    std::vector<std::vector<double>> rows(3, std::vector<double>{1.0, 2.0});
    auto n = Normalizer::fit(rows);
    CHECK_THROWS_AS(n.apply(std::vector<double>{1.0}), ShapeError);
    CHECK_THROWS_AS(n.invert(std::vector<double>{1.0, 2.0, 3.0}), ShapeError);
}

TEST_CASE("locf fill respects the 24h limit") {
    HourIndex start = hour_index_of(Date{2015, 1, 1});
    TimeSeries s = testutil::make_series(start, 100, [](std::size_t i) { return double(i); },
                                         Channel::temperature);
    for (std::size_t i = 10; i < 20; ++i) s.missing[i] = 1;  // 10h gap: fillable
    for (std::size_t i = 40; i < 70; ++i) s.missing[i] = 1;  // 30h gap: tail unfillable
    auto filled = locf_fill(s);
    CHECK(filled.missing_count() == 30 - 24);
    CHECK(filled.at(15) == 9.0);
    CHECK(!filled.is_missing(19));
    CHECK(filled.at(63) == 39.0);  // 24th carried hour
    CHECK(filled.is_missing(64));
}

TEST_CASE("holiday file round-trip and validation") {
    TempDir dir("holidays");
    testutil::write_file(dir.file("h.txt"), "# national holidays\n2015-01-01\n2015-12-25\n\n");
    auto holidays = load_holiday_file(dir.file("h.txt"));
    REQUIRE(holidays.size() == 2);
    CHECK(holidays[0] == Date{2015, 1, 1});
    write_holiday_file(holidays, dir.file("out.txt"));
    CHECK(testutil::read_file(dir.file("out.txt")) == "2015-01-01\n2015-12-25\n");
    testutil::write_file(dir.file("bad.txt"), "2015-13-01\n");
    CHECK_THROWS_AS(load_holiday_file(dir.file("bad.txt")), FormatError);
}

TEST_CASE("calendar flags are consistent") {
    auto cal = CalendarInfo::build(Date{2015, 1, 1}, 365, {Date{2015, 5, 1}});
    const auto& newyear = cal.at(Date{2015, 1, 1});
    CHECK(newyear.day_of_week == 3);
    CHECK(newyear.is_weekend == 0);
    CHECK(newyear.season == 0);
    const auto& mayday = cal.at(Date{2015, 5, 1});
    CHECK(mayday.is_holiday == 1);
    const auto& saturday = cal.at(Date{2015, 1, 3});
    CHECK(saturday.day_of_week == 5);
    CHECK(saturday.is_weekend == 1);
    for (int i = 0; i < 365; ++i) {
        Date d = add_days(Date{2015, 1, 1}, i);
        const auto& info = cal.at(d);
        CHECK(info.is_weekend == (info.day_of_week >= 5 ? 1 : 0));
        CHECK(info.month == d.month);
        CHECK(info.day_of_month == d.day);
    }
    CHECK_THROWS_AS(cal.at(Date{2016, 6, 1}), RangeError);
}

TEST_SUITE_END();
