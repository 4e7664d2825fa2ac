#include "enercast/mlp.hpp"

#include "enercast/errors.hpp"
#include "enercast/rng.hpp"

#include <cmath>

namespace enercast {

std::string activation_name(Activation a) {
    return a == Activation::relu ? "relu" : "identity";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "identity") return Activation::identity;
    throw FormatError("unknown activation '" + name + "'");
}

namespace {

void validate_dims(const std::vector<std::size_t>& dims) {
    if (dims.size() < 2) throw ShapeError("model needs at least input and output dims");
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeError("layer dimension must be positive");
    }
}

} // namespace

MlpModel MlpModel::random(const std::vector<std::size_t>& layer_dims, std::uint64_t seed) {
    validate_dims(layer_dims);
    MlpModel m;
    m.layer_dims_ = layer_dims;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
        Matrix w(layer_dims[l + 1], layer_dims[l]);
        double bound = 1.0 / std::sqrt(static_cast<double>(layer_dims[l]));
        for (double& v : w.data) v = rng.uniform(-bound, bound);
        m.weights_.push_back(std::move(w));
        m.biases_.emplace_back(layer_dims[l + 1], 0.0);
    }
    return m;
}

MlpModel MlpModel::zeros(const std::vector<std::size_t>& layer_dims) {
    validate_dims(layer_dims);
    MlpModel m;
    m.layer_dims_ = layer_dims;
    for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
        m.weights_.emplace_back(layer_dims[l + 1], layer_dims[l]);
        m.biases_.emplace_back(layer_dims[l + 1], 0.0);
    }
    return m;
}

std::vector<double> MlpModel::forward(std::span<const double> input) const {
    if (input.size() != input_dim()) {
        throw ShapeError("forward: input dimension " + std::to_string(input.size()) +
                         " does not match model input " + std::to_string(input_dim()));
    }
    std::vector<double> cur(input.begin(), input.end());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const Matrix& w = weights_[l];
        const auto& b = biases_[l];
        std::vector<double> next(w.rows);
        for (std::size_t r = 0; r < w.rows; ++r) {
            double acc = b[r];
            const double* wr = &w.data[r * w.cols];
            for (std::size_t c = 0; c < w.cols; ++c) acc += wr[c] * cur[c];
            next[r] = acc;
        }
        const bool last = (l + 1 == weights_.size());
        if (!last && hidden_activation_ == Activation::relu) {
            for (double& v : next) v = v > 0.0 ? v : 0.0;
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::vector<double>> MlpModel::forward_trace(std::span<const double> input) const {
    if (input.size() != input_dim()) {
        throw ShapeError("forward_trace: input dimension mismatch");
    }
    std::vector<std::vector<double>> acts;
    acts.reserve(weights_.size() + 1);
    acts.emplace_back(input.begin(), input.end());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const Matrix& w = weights_[l];
        const auto& b = biases_[l];
        const auto& cur = acts.back();
        std::vector<double> next(w.rows);
        for (std::size_t r = 0; r < w.rows; ++r) {
            double acc = b[r];
            const double* wr = &w.data[r * w.cols];
            for (std::size_t c = 0; c < w.cols; ++c) acc += wr[c] * cur[c];
            next[r] = acc;
        }
        const bool last = (l + 1 == weights_.size());
        if (!last && hidden_activation_ == Activation::relu) {
            for (double& v : next) v = v > 0.0 ? v : 0.0;
        }
        acts.push_back(std::move(next));
    }
    return acts;
}

std::size_t MlpModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        n += weights_[l].data.size() + biases_[l].size();
    }
    return n;
}

nlohmann::json MlpModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["layer_dims"] = layer_dims_;
    j["hidden_activation"] = activation_name(hidden_activation_);
    j["output_activation"] = activation_name(output_activation_);
    nlohmann::json ws = nlohmann::json::array();
    for (const Matrix& w : weights_) ws.push_back(w.data); // row-major
    j["weights"] = std::move(ws);
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : biases_) bs.push_back(b);
    j["biases"] = std::move(bs);
    return j;
}

MlpModel MlpModel::from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion) {
        throw FormatError("unsupported model format_version");
    }
    MlpModel m;
    m.layer_dims_ = j.at("layer_dims").get<std::vector<std::size_t>>();
    validate_dims(m.layer_dims_);
    m.hidden_activation_ = activation_from_name(j.at("hidden_activation").get<std::string>());
    m.output_activation_ = activation_from_name(j.at("output_activation").get<std::string>());
    const auto& ws = j.at("weights");
    const auto& bs = j.at("biases");
    if (ws.size() != m.layer_dims_.size() - 1 || bs.size() != m.layer_dims_.size() - 1) {
        throw FormatError("model JSON layer count mismatch");
    }
    for (std::size_t l = 0; l + 1 < m.layer_dims_.size(); ++l) {
        Matrix w(m.layer_dims_[l + 1], m.layer_dims_[l]);
        w.data = ws[l].get<std::vector<double>>();
        if (w.data.size() != w.rows * w.cols) throw FormatError("model JSON weight size mismatch");
        m.weights_.push_back(std::move(w));
        m.biases_.push_back(bs[l].get<std::vector<double>>());
        if (m.biases_.back().size() != m.layer_dims_[l + 1]) {
            throw FormatError("model JSON bias size mismatch");
        }
    }
    m.check_invariants();
    return m;
}

void MlpModel::check_invariants() const {
    if (weights_.size() != layer_dims_.size() - 1 || biases_.size() != weights_.size()) {
        throw ShapeError("layer count inconsistent with layer_dims");
    }
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (weights_[l].rows != layer_dims_[l + 1] || weights_[l].cols != layer_dims_[l]) {
            throw ShapeError("weight matrix " + std::to_string(l) +
                             " shape inconsistent with layer_dims");
        }
        if (biases_[l].size() != layer_dims_[l + 1]) {
            throw ShapeError("bias vector " + std::to_string(l) +
                             " length inconsistent with layer_dims");
        }
    }
}

} // namespace enercast
