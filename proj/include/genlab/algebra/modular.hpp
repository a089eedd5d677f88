#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace genlab::algebra {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 add_mod(u64 a, u64 b, u64 n) {
    u64 s = a + b;
    if (s < a || s >= n) s -= n;
    return s;
}
inline u64 sub_mod(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + (n - b); }
inline u64 neg_mod(u64 a, u64 n) { return a == 0 ? 0 : n - a; }
inline u64 mul_mod(u64 a, u64 b, u64 n) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % n);
}

// Signed value reduced into [0, n).
u64 reduce_signed(i64 v, u64 n);

u64 pow_mod(u64 base, u64 exp, u64 n);
u64 gcd_u64(u64 a, u64 b);

// Inverse of a mod n; nullopt when gcd(a, n) != 1.
std::optional<u64> inv_mod(u64 a, u64 n);
// Throwing variant for callers that have already established invertibility.
u64 inv_mod_checked(u64 a, u64 n);

bool is_prime_u64(u64 n);

// x ≡ r1 (mod m1), x ≡ r2 (mod m2), gcd(m1, m2) = 1.
u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2);

// Square roots of a mod prime p, ascending; empty when a is a non-residue.
std::vector<u64> sqrt_mod_prime(u64 a, u64 p);

// Roots in [0, p) of c2 X^2 + c1 X + c0 over the prime field, ascending,
// degree taken from the leading nonzero coefficient. All-zero polynomial -> nullopt.
std::optional<std::vector<u64>> roots_quadratic_mod(u64 c2, u64 c1, u64 c0, u64 p);

// Smallest primitive root of a prime q.
u64 primitive_root(u64 q);

// Order of a in (Z/n)^*; a must be a unit.
u64 multiplicative_order(u64 a, u64 n);

unsigned ceil_log2(u64 n);

std::vector<u64> primes_up_to(u64 bound);

}  // namespace genlab::algebra
