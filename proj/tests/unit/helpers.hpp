#ifndef ENERCAST_TEST_HELPERS_HPP
#define ENERCAST_TEST_HELPERS_HPP

#include "enercast/rng.hpp"
#include "enercast/series.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <unistd.h>

namespace testutil {

inline enercast::TimeSeries make_series(enercast::HourIndex start_hour, std::size_t n,
                                        const std::function<double(std::size_t)>& fn,
                                        enercast::Channel channel = enercast::Channel::load) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = fn(i);
    return enercast::TimeSeries::from_values(start_hour, channel, std::move(values));
}

/// Fresh scratch directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("enercast_test_" + tag + "_" + std::to_string(++counter) + "_" +
                 std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace testutil

#endif // ENERCAST_TEST_HELPERS_HPP
