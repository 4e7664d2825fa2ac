#ifndef ENERCAST_NORMALIZE_HPP
#define ENERCAST_NORMALIZE_HPP

#include <json.hpp>

#include <span>
#include <vector>

namespace enercast {

/**
 * Per-dimension standardization (x - mean) / std, fitted on training
 * samples only. Standard deviations below 1e-8 are floored so constant
 * dimensions normalize to zero instead of blowing up.
 */
class Normalizer {
public:
    Normalizer() = default;

    static Normalizer fit(std::span<const std::vector<double>> rows);

    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> invert(std::span<const double> z) const;

    std::size_t dim() const { return mean_.size(); }
    const std::vector<double>& mean() const { return mean_; }
    const std::vector<double>& stddev() const { return std_; }

    nlohmann::json to_json() const;
    static Normalizer from_json(const nlohmann::json& j);

    static constexpr double kStdFloor = 1e-8;

private:
    std::vector<double> mean_;
    std::vector<double> std_;
};

} // namespace enercast

#endif // ENERCAST_NORMALIZE_HPP
