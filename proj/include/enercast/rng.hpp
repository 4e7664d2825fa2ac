#ifndef ENERCAST_RNG_HPP
#define ENERCAST_RNG_HPP

#include <array>
#include <cstdint>

namespace enercast {

/**
 * Deterministic random stream used everywhere randomness is needed
 * (weight init, batch shuffling, synthetic noise).
 *
 * The generator is SplitMix64: the state advances by the 64-bit golden
 * ratio constant and each output is a fixed avalanche mix of the state.
 * The algorithm is fully specified here so streams are reproducible on
 * any platform, unlike the distributions in <random> whose output is
 * implementation-defined.
 *
 *   state  += 0x9e3779b97f4a7c15
 *   z       = state
 *   z       = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
 *   z       = (z ^ (z >> 27)) * 0x94d049bb133111eb
 *   output  = z ^ (z >> 31)
 *
 * uniform() maps the top 53 bits to a double in [0, 1).
 * normal() uses the Box-Muller transform on two fresh uniforms.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double normal();

    /// Unbiased-enough index draw for shuffling (modulo bias is < 2^-53
    /// for the sizes used here).
    std::uint64_t below(std::uint64_t n) {
        return next_u64() % n;
    }

    /// Fisher-Yates shuffle of an index vector.
    template <typename T>
    void shuffle(T& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Derives an independent stream, e.g. one per training stage.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace enercast

#endif // ENERCAST_RNG_HPP
