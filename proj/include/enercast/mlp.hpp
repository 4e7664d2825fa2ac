#ifndef ENERCAST_MLP_HPP
#define ENERCAST_MLP_HPP

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace enercast {

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class Activation { relu, identity };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

/**
 * Dense feedforward network: ReLU hidden layers, linear output.
 *
 * Weight matrix l maps layer l activations (cols = layer_dims[l]) to
 * layer l+1 pre-activations (rows = layer_dims[l+1]). Forward passes
 * are pure; trained models can be shared across threads for inference.
 */
class MlpModel {
public:
    MlpModel() = default;

    /// Seeded init: weights uniform in (-1/sqrt(fan_in), 1/sqrt(fan_in)),
    /// biases zero. Identical (dims, seed) gives bit-identical weights.
    static MlpModel random(const std::vector<std::size_t>& layer_dims, std::uint64_t seed);

    static MlpModel zeros(const std::vector<std::size_t>& layer_dims);

    std::vector<double> forward(std::span<const double> input) const;

    /// Forward pass retaining per-layer activations (index 0 is the
    /// input copy) for backpropagation.
    std::vector<std::vector<double>> forward_trace(std::span<const double> input) const;

    const std::vector<std::size_t>& layer_dims() const { return layer_dims_; }
    std::size_t input_dim() const { return layer_dims_.front(); }
    std::size_t output_dim() const { return layer_dims_.back(); }
    std::size_t n_weight_layers() const { return weights_.size(); }

    std::vector<Matrix>& weights() { return weights_; }
    const std::vector<Matrix>& weights() const { return weights_; }
    std::vector<std::vector<double>>& biases() { return biases_; }
    const std::vector<std::vector<double>>& biases() const { return biases_; }

    Activation hidden_activation() const { return hidden_activation_; }
    Activation output_activation() const { return output_activation_; }

    std::size_t parameter_count() const;

    nlohmann::json to_json() const;
    static MlpModel from_json(const nlohmann::json& j);

    void check_invariants() const;

    static constexpr int kFormatVersion = 1;

private:
    std::vector<std::size_t> layer_dims_;
    std::vector<Matrix> weights_;
    std::vector<std::vector<double>> biases_;
    Activation hidden_activation_ = Activation::relu;
    Activation output_activation_ = Activation::identity;
};

} // namespace enercast

#endif // ENERCAST_MLP_HPP
