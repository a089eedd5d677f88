#include "genlab/common/rng.hpp"

#include "genlab/common/error.hpp"

namespace genlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(fnv1a(stream)));
    return splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    require(bound > 0, "uniform_below: empty range");
    if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

unsigned __int128 uniform_below_u128(Rng& rng, unsigned __int128 bound) {
    require(bound > 0, "uniform_below_u128: empty range");
    if (bound <= UINT64_MAX) return uniform_below(rng, static_cast<std::uint64_t>(bound));
    using u128 = unsigned __int128;
    const u128 all = ~u128(0);
    u128 limit = all - all % bound;
    for (;;) {
        u128 v = (u128(rng()) << 64) | rng();
        if (v < limit) return v % bound;
    }
}

double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool bernoulli(Rng& rng, double p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return uniform_unit(rng) < p;
}

}  // namespace genlab
