#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace genlab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

// Seed for a named sub-stream. The same (seed, stream, index) always yields the same value.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0) {
    return Rng(derive_seed(seed, stream, index));
}

// Uniform in [0, bound). bound must be positive. Rejection sampling, so the
// result does not depend on the standard library's distribution code.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
unsigned __int128 uniform_below_u128(Rng& rng, unsigned __int128 bound);

// Uniform in [0,1) with 53 bits.
double uniform_unit(Rng& rng);

bool bernoulli(Rng& rng, double p);

}  // namespace genlab
