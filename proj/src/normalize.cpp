#include "enercast/normalize.hpp"

#include "enercast/errors.hpp"

#include <cmath>

namespace enercast {

Normalizer Normalizer::fit(std::span<const std::vector<double>> rows) {
    if (rows.empty()) throw ValidationError("cannot fit normalizer on zero samples");
    const std::size_t dim = rows.front().size();
    Normalizer n;
    n.mean_.assign(dim, 0.0);
    n.std_.assign(dim, 0.0);
    for (const auto& row : rows) {
        if (row.size() != dim) throw ShapeError("inconsistent sample dimension in normalizer fit");
        for (std::size_t j = 0; j < dim; ++j) n.mean_[j] += row[j];
    }
    const double count = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < dim; ++j) n.mean_[j] /= count;
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < dim; ++j) {
            double d = row[j] - n.mean_[j];
            n.std_[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        n.std_[j] = std::sqrt(n.std_[j] / count);
        if (n.std_[j] < kStdFloor) n.std_[j] = kStdFloor;
    }
    return n;
}

std::vector<double> Normalizer::apply(std::span<const double> x) const {
    if (x.size() != mean_.size()) {
        throw ShapeError("normalizer dimension " + std::to_string(mean_.size()) +
                         " does not match input dimension " + std::to_string(x.size()));
    }
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - mean_[j]) / std_[j];
    return z;
}

std::vector<double> Normalizer::invert(std::span<const double> z) const {
    if (z.size() != mean_.size()) {
        throw ShapeError("normalizer dimension " + std::to_string(mean_.size()) +
                         " does not match input dimension " + std::to_string(z.size()));
    }
    std::vector<double> x(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) x[j] = z[j] * std_[j] + mean_[j];
    return x;
}

nlohmann::json Normalizer::to_json() const {
    return nlohmann::json{{"mean", mean_}, {"std", std_}};
}

Normalizer Normalizer::from_json(const nlohmann::json& j) {
    Normalizer n;
    n.mean_ = j.at("mean").get<std::vector<double>>();
    n.std_ = j.at("std").get<std::vector<double>>();
    if (n.mean_.size() != n.std_.size()) throw FormatError("normalizer mean/std length mismatch");
    return n;
}

} // namespace enercast
