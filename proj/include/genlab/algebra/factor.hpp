#pragma once

#include "genlab/common/bigint.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace genlab::algebra {

struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors;  // increasing primes

    BigInt product() const;
    bool empty() const { return factors.empty(); }
};

struct FactorLimits {
    unsigned max_bits = 96;
};

bool is_probable_prime(const BigInt& n);

// Complete factorization of n >= 1. Deterministic given seed.
Factorization factor_integer(const BigInt& n, std::uint64_t seed = 0, FactorLimits limits = {});

// All prime divisors of |x| with exactly n bits, increasing.
std::vector<BigInt> nbit_prime_divisors(const BigInt& x, unsigned n, std::uint64_t seed = 0);

}  // namespace genlab::algebra
