#include "genlab/algebra/modular.hpp"

#include "genlab/common/error.hpp"

#include <algorithm>
#include <numeric>

namespace genlab::algebra {

u64 reduce_signed(i64 v, u64 n) {
    if (v >= 0) return static_cast<u64>(v) % n;
    u64 m = static_cast<u64>(-(v + 1)) % n;  // avoids overflow at INT64_MIN
    return n - 1 - m;
}

u64 pow_mod(u64 base, u64 exp, u64 n) {
    if (n == 1) return 0;
    u64 r = 1;
    base %= n;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

std::optional<u64> inv_mod(u64 a, u64 n) {
    if (n == 1) return 0;
    __int128 t = 0, newt = 1;
    __int128 r = n, newr = a % n;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += n;
    return static_cast<u64>(t);
}

u64 inv_mod_checked(u64 a, u64 n) {
    auto v = inv_mod(a, n);
    if (!v) throw ContractViolation("inv_mod: element not invertible");
    return *v;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
    // x = r1 + m1 * k, k = (r2 - r1) * m1^{-1} mod m2
    u64 k = mul_mod(sub_mod(r2 % m2, r1 % m2, m2), inv_mod_checked(m1 % m2, m2), m2);
    return static_cast<u64>((static_cast<unsigned __int128>(m1) * k + r1) % (static_cast<unsigned __int128>(m1) * m2));
}

std::vector<u64> sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (a == 0) return {0};
    if (p == 2) return {a};
    if (pow_mod(a, (p - 1) / 2, p) != 1) return {};
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    u64 r2 = p - r;
    if (r2 == r) return {r};
    return {std::min(r, r2), std::max(r, r2)};
}

std::optional<std::vector<u64>> roots_quadratic_mod(u64 c2, u64 c1, u64 c0, u64 p) {
    c2 %= p;
    c1 %= p;
    c0 %= p;
    if (c2 == 0) {
        if (c1 == 0) {
            if (c0 == 0) return std::nullopt;
            return std::vector<u64>{};
        }
        return std::vector<u64>{mul_mod(neg_mod(c0, p), inv_mod_checked(c1, p), p)};
    }
    if (p == 2) {
        std::vector<u64> out;
        for (u64 x = 0; x < 2; ++x) {
            if (((c2 * x * x) + c1 * x + c0) % 2 == 0) out.push_back(x);
        }
        return out;
    }
    // discriminant c1^2 - 4 c2 c0
    u64 disc = sub_mod(mul_mod(c1, c1, p), mul_mod(4 % p, mul_mod(c2, c0, p), p), p);
    std::vector<u64> out;
    u64 inv2a = inv_mod_checked(mul_mod(2, c2, p), p);
    for (u64 s : sqrt_mod_prime(disc, p)) {
        out.push_back(mul_mod(sub_mod(s, c1, p), inv2a, p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {
std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}
}  // namespace

u64 primitive_root(u64 q) {
    require(is_prime_u64(q), "primitive_root: modulus must be prime");
    if (q == 2) return 1;
    auto fs = distinct_prime_factors(q - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 f : fs) {
            if (pow_mod(g, (q - 1) / f, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

u64 multiplicative_order(u64 a, u64 n) {
    require(gcd_u64(a % n, n) == 1, "multiplicative_order: not a unit");
    if (n == 1) return 1;
    u64 r = 1, x = a % n;
    while (x != 1) {
        x = mul_mod(x, a, n);
        ++r;
    }
    return r;
}

unsigned ceil_log2(u64 n) {
    unsigned b = 0;
    while (b < 64 && (u64(1) << b) < n) ++b;
    return b;
}

std::vector<u64> primes_up_to(u64 bound) {
    std::vector<u64> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(bound + 1, true);
    for (u64 i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= bound; j += i) sieve[j] = false;
    }
    return out;
}

}  // namespace genlab::algebra
