#ifndef ENERCAST_CSV_HPP
#define ENERCAST_CSV_HPP

#include "enercast/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enercast {

/// Shortest round-trip decimal rendering of a double (used by every
/// text format the toolkit writes, so exports re-ingest exactly).
std::string format_double(double v);

/// All weather channels observed at one location.
struct WeatherData {
    int location_id = 0;
    TimeSeries temperature;
    TimeSeries humidity;
    TimeSeries wind_speed;
    TimeSeries cloudiness;

    const TimeSeries& channel(Channel c) const;
};

/// Reads a load CSV (header `timestamp,load_mw`). Rows must carry
/// strictly increasing hour-aligned UTC timestamps; absent hours become
/// masked entries. Throws FormatError (with line number) on bad rows.
TimeSeries ingest_load_csv(const std::string& path);

/// Reads a weather CSV (header `timestamp,location_id,temperature_c,
/// humidity_pct,wind_speed_ms,cloudiness_pct`) into one WeatherData per
/// location, ordered by location id. Timestamps must be strictly
/// increasing per location.
std::vector<WeatherData> ingest_weather_csv(const std::string& path);

/// Single-channel convenience over the two ingesters: load reads the
/// load schema, weather channels read the weather schema and select one
/// location (default: the lowest id).
TimeSeries ingest_csv(const std::string& path, Channel channel,
                      std::optional<int> location_id = std::nullopt);

void export_load_csv(const TimeSeries& series, const std::string& path);
void export_weather_csv(const std::vector<WeatherData>& weather, const std::string& path);

/// Holiday file: one ISO date (YYYY-MM-DD) per line; blank lines and
/// lines starting with '#' are skipped.
std::vector<Date> load_holiday_file(const std::string& path);
void write_holiday_file(const std::vector<Date>& holidays, const std::string& path);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace enercast

#endif // ENERCAST_CSV_HPP
