#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace genlab {

// sqrt(q(1-q)/n) with q clamped to [0,1].
inline double binomial_sigma(double q, std::uint64_t n) {
    if (n == 0) return 0.0;
    q = std::clamp(q, 0.0, 1.0);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(n));
}

// Estimate stays below an upper bound up to 3 sigma at the bound.
inline bool within_upper(double est, double bound, std::uint64_t n) {
    return est <= bound + 3.0 * binomial_sigma(bound, n);
}

inline bool within_lower(double est, double bound, std::uint64_t n) {
    return est >= bound - 3.0 * binomial_sigma(bound, n);
}

}  // namespace genlab
