#include "genlab/algebra/factor.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"
#include "genlab/common/rng.hpp"

#include <algorithm>
#include <map>

namespace genlab::algebra {

namespace mp = boost::multiprecision;

BigInt Factorization::product() const {
    BigInt r = 1;
    for (const auto& [p, e] : factors) r *= mp::pow(p, e);
    return r;
}

namespace {

const std::vector<u64>& small_primes() {
    static const std::vector<u64> ps = primes_up_to(1000);
    return ps;
}

bool fits_u64(const BigInt& n) { return n >= 0 && n <= BigInt(UINT64_MAX); }

u64 rho_u64(u64 n, Rng& rng) {
    if (n % 2 == 0) return 2;
    for (;;) {
        u64 c = 1 + uniform_below(rng, n - 1);
        u64 y = uniform_below(rng, n), m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

BigInt rho_big(const BigInt& n, Rng& rng) {
    if (n % 2 == 0) return 2;
    BigInt nm1 = n - 1;
    for (;;) {
        BigInt c = 1 + BigInt(rng()) % nm1;
        BigInt x = BigInt(rng()) % n, y = x, g = 1;
        while (g == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            g = mp::gcd(abs_big(x - y), n);
        }
        if (g != n) return g;
    }
}

void split(const BigInt& n, Rng& rng, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = fits_u64(n) ? BigInt(rho_u64(static_cast<u64>(n), rng)) : rho_big(n, rng);
    split(d, rng, out);
    split(n / d, rng, out);
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(static_cast<u64>(n));
    for (u64 p : small_primes()) {
        if (n % p == 0) return n == p;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned a : bases) {
        BigInt x = mp::powm(BigInt(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (unsigned r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

Factorization factor_integer(const BigInt& n, std::uint64_t seed, FactorLimits limits) {
    require(n >= 1, "factor_integer: input must be positive");
    if (bit_length(n) > limits.max_bits) throw ConfigError("factor_integer: input exceeds configured size bound");
    std::map<BigInt, unsigned> acc;
    BigInt m = n;
    for (u64 p : small_primes()) {
        if (BigInt(p) * p > m) break;
        while (m % p == 0) {
            ++acc[BigInt(p)];
            m /= p;
        }
    }
    Rng rng(derive_seed(seed, "factor"));
    split(m, rng, acc);
    Factorization f;
    for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
    return f;
}

std::vector<BigInt> nbit_prime_divisors(const BigInt& x, unsigned n, std::uint64_t seed) {
    require(x != 0, "nbit_prime_divisors: x must be nonzero");
    require(n >= 2, "nbit_prime_divisors: bit length must be at least 2");
    BigInt ax = abs_big(x);
    std::vector<BigInt> out;
    if (n <= 20) {
        u64 lo = u64(1) << (n - 1), hi = (u64(1) << n) - 1;
        for (u64 p : primes_up_to(hi)) {
            if (p < lo) continue;
            if (ax % p == 0) out.emplace_back(p);
        }
        return out;
    }
    for (const auto& [p, e] : factor_integer(ax, seed).factors) {
        (void)e;
        if (bit_length(p) == n) out.push_back(p);
    }
    return out;
}

}  // namespace genlab::algebra
