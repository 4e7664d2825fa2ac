#include "enercast/csv.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace enercast {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

const TimeSeries& WeatherData::channel(Channel c) const {
    switch (c) {
        case Channel::temperature: return temperature;
        case Channel::humidity: return humidity;
        case Channel::wind_speed: return wind_speed;
        case Channel::cloudiness: return cloudiness;
        case Channel::load: break;
    }
    throw ValidationError("weather data has no 'load' channel");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_value(const std::string& s, std::size_t line_no, const std::string& what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw FormatError("line " + std::to_string(line_no) + ": unparsable " + what + " '" + s +
                          "'");
    }
    return v;
}

long parse_int(const std::string& s, std::size_t line_no, const std::string& what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": unparsable " + what + " '" + s +
                          "'");
    }
    return v;
}

HourIndex parse_hour_stamp(const std::string& s, std::size_t line_no) {
    std::int64_t seconds;
    try {
        seconds = parse_utc_timestamp(s);
    } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (seconds % 3600 != 0) {
        throw FormatError("line " + std::to_string(line_no) + ": timestamp '" + s +
                          "' not on an hour boundary");
    }
    return seconds / 3600;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    return in;
}

// Assembles (hour, value) rows into a contiguous masked series.
TimeSeries assemble_series(Channel channel, const std::vector<std::pair<HourIndex, double>>& rows,
                           const std::string& path) {
    if (rows.empty()) throw FormatError("no data rows in " + path);
    HourIndex start = rows.front().first;
    HourIndex end = rows.back().first + 1;
    TimeSeries s;
    s.start_hour = start;
    s.channel = channel;
    s.values.assign(static_cast<std::size_t>(end - start),
                    std::numeric_limits<double>::quiet_NaN());
    s.missing.assign(static_cast<std::size_t>(end - start), 1);
    for (const auto& [hour, value] : rows) {
        auto i = static_cast<std::size_t>(hour - start);
        s.values[i] = value;
        s.missing[i] = 0;
    }
    return s;
}

} // namespace

TimeSeries ingest_load_csv(const std::string& path) {
    auto in = open_for_read(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw FormatError("empty file: " + path);
    ++line_no;
    if (split_fields(line) != std::vector<std::string>{"timestamp", "load_mw"}) {
        throw FormatError(path + ": expected header 'timestamp,load_mw'");
    }

    std::vector<std::pair<HourIndex, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw FormatError("line " + std::to_string(line_no) + ": expected 2 fields, got " +
                              std::to_string(fields.size()));
        }
        HourIndex h = parse_hour_stamp(fields[0], line_no);
        double v = parse_value(fields[1], line_no, "load value");
        if (!rows.empty()) {
            if (h == rows.back().first) {
                throw FormatError("line " + std::to_string(line_no) + ": duplicate timestamp '" +
                                  fields[0] + "'");
            }
            if (h < rows.back().first) {
                throw FormatError("line " + std::to_string(line_no) + ": out-of-order timestamp '" +
                                  fields[0] + "'");
            }
        }
        rows.emplace_back(h, v);
    }
    return assemble_series(Channel::load, rows, path);
}

std::vector<WeatherData> ingest_weather_csv(const std::string& path) {
    auto in = open_for_read(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw FormatError("empty file: " + path);
    ++line_no;
    const std::vector<std::string> header = {"timestamp",    "location_id",   "temperature_c",
                                             "humidity_pct", "wind_speed_ms", "cloudiness_pct"};
    if (split_fields(line) != header) {
        throw FormatError(path +
                          ": expected header 'timestamp,location_id,temperature_c,humidity_pct,"
                          "wind_speed_ms,cloudiness_pct'");
    }

    struct LocationRows {
        std::vector<std::pair<HourIndex, double>> temp, hum, wind, cloud;
    };
    std::map<int, LocationRows> by_location;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw FormatError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                              std::to_string(fields.size()));
        }
        HourIndex h = parse_hour_stamp(fields[0], line_no);
        int loc = static_cast<int>(parse_int(fields[1], line_no, "location_id"));
        auto& rows = by_location[loc];
        if (!rows.temp.empty()) {
            if (h == rows.temp.back().first) {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": duplicate timestamp for location " + std::to_string(loc));
            }
            if (h < rows.temp.back().first) {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": out-of-order timestamp for location " + std::to_string(loc));
            }
        }
        rows.temp.emplace_back(h, parse_value(fields[2], line_no, "temperature"));
        rows.hum.emplace_back(h, parse_value(fields[3], line_no, "humidity"));
        rows.wind.emplace_back(h, parse_value(fields[4], line_no, "wind speed"));
        rows.cloud.emplace_back(h, parse_value(fields[5], line_no, "cloudiness"));
    }

    std::vector<WeatherData> out;
    for (const auto& [loc, rows] : by_location) {
        WeatherData w;
        w.location_id = loc;
        w.temperature = assemble_series(Channel::temperature, rows.temp, path);
        w.humidity = assemble_series(Channel::humidity, rows.hum, path);
        w.wind_speed = assemble_series(Channel::wind_speed, rows.wind, path);
        w.cloudiness = assemble_series(Channel::cloudiness, rows.cloud, path);
        out.push_back(std::move(w));
    }
    if (out.empty()) throw FormatError("no data rows in " + path);
    return out;
}

TimeSeries ingest_csv(const std::string& path, Channel channel, std::optional<int> location_id) {
    if (channel == Channel::load) return ingest_load_csv(path);
    auto weather = ingest_weather_csv(path);
    if (!location_id) return weather.front().channel(channel);
    for (const auto& w : weather) {
        if (w.location_id == *location_id) return w.channel(channel);
    }
    throw FormatError("location " + std::to_string(*location_id) + " not present in " + path);
}

void export_load_csv(const TimeSeries& series, const std::string& path) {
    std::string out = "timestamp,load_mw\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i)) continue;
        out += format_utc_hour(series.hour_at(i));
        out += ',';
        out += format_double(series.values[i]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void export_weather_csv(const std::vector<WeatherData>& weather, const std::string& path) {
    std::string out = "timestamp,location_id,temperature_c,humidity_pct,wind_speed_ms,cloudiness_pct\n";
    if (weather.empty()) {
        write_file_atomic(path, out);
        return;
    }
    HourIndex start = weather.front().temperature.start_hour;
    HourIndex end = weather.front().temperature.end_hour();
    for (const auto& w : weather) {
        start = std::min(start, w.temperature.start_hour);
        end = std::max(end, w.temperature.end_hour());
    }
    for (HourIndex h = start; h < end; ++h) {
        for (const auto& w : weather) {
            auto i = w.temperature.index_of(h);
            if (!i || w.temperature.is_missing(*i)) continue;
            out += format_utc_hour(h);
            out += ',';
            out += std::to_string(w.location_id);
            out += ',';
            out += format_double(w.temperature.values[*i]);
            out += ',';
            out += format_double(w.humidity.values[*i]);
            out += ',';
            out += format_double(w.wind_speed.values[*i]);
            out += ',';
            out += format_double(w.cloudiness.values[*i]);
            out += '\n';
        }
    }
    write_file_atomic(path, out);
}

std::vector<Date> load_holiday_file(const std::string& path) {
    auto in = open_for_read(path);
    std::vector<Date> holidays;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            holidays.push_back(parse_date(line));
        } catch (const FormatError& e) {
            throw FormatError(path + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    std::sort(holidays.begin(), holidays.end());
    holidays.erase(std::unique(holidays.begin(), holidays.end()), holidays.end());
    return holidays;
}

void write_holiday_file(const std::vector<Date>& holidays, const std::string& path) {
    std::string out;
    for (const auto& d : holidays) {
        out += format_date(d);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace enercast
