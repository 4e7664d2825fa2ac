#include "enercast/rng.hpp"

#include <cmath>

namespace enercast {

double Rng::normal() {
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace enercast
