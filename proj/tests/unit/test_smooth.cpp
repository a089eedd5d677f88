#include "doctest.h"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"
#include "genlab/smooth/smooth.hpp"
#include "genlab/tracker/tracker.hpp"

#include <cmath>

using namespace genlab;
using namespace genlab::smooth;

namespace {

SmoothConfig concrete(u64 q, u64 B) {
    SmoothConfig c;
    c.mode = Mode::Concrete;
    c.q = q;
    c.B = B;
    return c;
}

u64 brute_log(u64 g, u64 v, u64 q) {
    u64 x = 1;
    for (u64 e = 0; e < q - 1; ++e) {
        if (x == v) return e;
        x = algebra::mul_mod(x, g, q);
    }
    FAIL("no discrete log");
    return 0;
}

// Exponents of v over the primes <= B by repeated division by every integer >= 2.
std::optional<std::vector<u64>> naive_factor(u64 v, const std::vector<u64>& primes) {
    std::vector<u64> c(primes.size(), 0);
    for (u64 d = 2; d <= v; ++d)
        while (v % d == 0) {
            v /= d;
            bool found = false;
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (primes[i] == d) {
                    ++c[i];
                    found = true;
                }
            if (!found) return std::nullopt;
        }
    return c;
}

}  // namespace

TEST_CASE("smooth test and smoothing gates on q=1019, B=7") {
    SmoothGroup G(concrete(1019, 7));
    CHECK(G.factor_base().primes == std::vector<u64>{2, 3, 5, 7});
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(algebra::pow_mod(G.generator(), G.factor_base().logs[i], 1019) == G.factor_base().primes[i]);

    SmoothSession s(G, {5});
    u64 g = G.generator();
    auto w12 = s.label(brute_log(g, 12, 1019));
    CHECK(s.smooth_test(w12));
    CHECK(s.smoothing(w12) == std::optional<std::vector<u64>>({2, 1, 0, 0}));
    auto w11 = s.label(brute_log(g, 11, 1019));
    CHECK_FALSE(s.smooth_test(w11));
    CHECK_FALSE(s.smoothing(w11).has_value());
    auto w1 = s.label(0);
    CHECK(s.smooth_test(w1));
    CHECK(s.smoothing(w1) == std::optional<std::vector<u64>>({0, 0, 0, 0}));
    CHECK_FALSE(s.smoothing(s.label(5000)).has_value());  // ⊥ wire
    CHECK(s.smoothing(w12) == s.smoothing(s.label(brute_log(g, 12, 1019))));
    CHECK(s.relations_sound());
    CHECK(s.transcript().tallies.smoothings == 6);
}

TEST_CASE("concrete smoothing agrees with naive factorization everywhere") {
    SmoothGroup G(concrete(1019, 7));
    u64 count = 0;
    for (u64 e = 0; e < 1018; ++e) {
        auto expect = naive_factor(G.representative(e), G.factor_base().primes);
        CHECK(G.smooth_vector(e) == expect);
        count += expect.has_value();
    }
    CHECK(G.smooth_count() == count);
}

TEST_CASE("tracked smoothing relations are sound and bounded by the rank") {
    SmoothGroup G(concrete(1019, 30));
    for (u64 t = 0; t < 20; ++t) {
        Rng rng = make_rng(t, "test");
        SmoothSession s(G, {uniform_below(rng, 1018)});
        for (int i = 0; i < 40; ++i) {
            auto w = s.op(s.label(uniform_below(rng, 1018)), s.inputs()[1], false);
            s.smoothing(w);
        }
        CHECK(s.relations_sound());
        auto tr = tracker::track_transcript(s.transcript(),
                                            tracker::ModDomain{G.tracking_modulus(), 1 + G.base_size(), G.order()});
        CHECK(tr.informative_count() == tr.zero_set().rank());
        CHECK(tr.zero_set().rank() <= G.base_size() + 1);
        CHECK(tr.zero_set().basis().well_formed());
    }
}

TEST_CASE("linear systems modulo a composite") {
    for (u64 n : {12, 18, 30, 1018}) {
        for (u64 t = 0; t < 60; ++t) {
            Rng rng = make_rng(t, "sys", n);
            std::size_t rows = 2 + t % 3;
            std::vector<std::vector<u64>> a(rows, std::vector<u64>(2));
            std::vector<u64> b(rows);
            u64 x0 = uniform_below(rng, n), y0 = uniform_below(rng, n);
            for (std::size_t r = 0; r < rows; ++r) {
                a[r] = {uniform_below(rng, n), uniform_below(rng, n)};
                b[r] = (t % 5 == 0) ? uniform_below(rng, n)
                                    : algebra::add_mod(algebra::mul_mod(a[r][0], x0, n), algebra::mul_mod(a[r][1], y0, n), n);
            }
            if (n > 100) {
                auto sol = solve_mod_composite(a, b, n);
                if (sol && t % 5) CHECK(*sol == std::vector<u64>{x0, y0});
                continue;
            }
            std::vector<std::vector<u64>> found;
            for (u64 x = 0; x < n; ++x)
                for (u64 y = 0; y < n; ++y) {
                    bool ok = true;
                    for (std::size_t r = 0; r < rows && ok; ++r)
                        ok = algebra::add_mod(algebra::mul_mod(a[r][0], x, n), algebra::mul_mod(a[r][1], y, n), n) == b[r];
                    if (ok) found.push_back({x, y});
                }
            auto sol = solve_mod_composite(a, b, n);
            CHECK(sol.has_value() == (found.size() == 1));
            if (sol && found.size() == 1) CHECK(*sol == found[0]);
        }
    }
}

TEST_CASE("index calculus on q=1019, B=30") {
    SmoothGroup G(concrete(1019, 30));
    for (u64 t = 0; t < 50; ++t) {
        Rng rng = make_rng(t, "ic");
        u64 x = uniform_below(rng, 1018);
        SmoothSession s(G, {x});
        auto got = index_calculus_dl(s, rng, 4000);
        REQUIRE(got.has_value());
        CHECK(algebra::pow_mod(G.generator(), *got, 1019) == algebra::pow_mod(G.generator(), x, 1019));
        CHECK(s.relations_sound());
    }
    SmoothSession one(G, {1});
    Rng rng(3);
    CHECK(index_calculus_dl(one, rng, 4000) == std::optional<u64>(1));

    SmoothGroup tiny(concrete(1019, 2));
    SmoothSession s(tiny, {77});
    CHECK_FALSE(index_calculus_dl(s, rng, 3).has_value());
}

TEST_CASE("informative smoothing rate") {
    SmoothConfig ideal;
    ideal.mode = Mode::Idealized;
    ideal.N = 10007;
    ideal.B = 30;
    ideal.p_S = 0.05;
    ideal.seed = 4;
    SmoothGroup G(ideal);
    CHECK(G.smooth_count() == 500);
    for (u64 e = 0; e < 10007; ++e) {
        auto c = G.smooth_vector(e);
        if (!c) continue;
        u64 s = 0;
        for (std::size_t i = 0; i < c->size(); ++i)
            s = algebra::add_mod(s, algebra::mul_mod((*c)[i], G.factor_base().logs[i], 10007), 10007);
        CHECK(s == e);
    }
    auto st = smooth_rate_stats(G, 10000, 1, 8);
    CHECK(st.rate() <= 0.05 + 3 * std::sqrt(0.05 * 0.95 / 10000));

    ideal.p_S = 0;
    SmoothGroup none(ideal);
    CHECK(smooth_rate_stats(none, 2000, 10, 1).informative == 0);

    SmoothGroup C(concrete(1019, 7));
    auto cs = smooth_rate_stats(C, 20000, 1, 5);
    CHECK(std::abs(cs.rate() - C.density()) <= 3 * cs.sigma());
}

TEST_CASE("smooth counts on affine subspaces") {
    SmoothGroup G(concrete(1019, 7));
    std::size_t b = G.base_size();
    auto full = AffineSpace::coordinates(b, {0, 1, 2, 3});
    CHECK(subspace_smooth_density(G, full, 0, 0) == doctest::Approx(G.density()));
    AffineSpace point;
    point.offset = {50, 0, 0, 0};
    CHECK(subspace_smooth_density(G, point, 0, 0) == 0.0);
    double d23 = subspace_smooth_density(G, AffineSpace::coordinates(b, {0, 1}), 0, 0);
    double d57 = subspace_smooth_density(G, AffineSpace::coordinates(b, {2, 3}), 0, 0);
    CHECK(d23 >= d57);
    // Support-based count of {2,3}-smooth representatives.
    u64 expect = 0;
    for (u64 v = 1; v < 1019; ++v) {
        u64 w = v;
        while (w % 2 == 0) w /= 2;
        while (w % 3 == 0) w /= 3;
        expect += w == 1;
    }
    CHECK(d23 == doctest::Approx(expect / 1018.0));
    CHECK(subspace_smooth_density(G, full, 20000, 2) == doctest::Approx(G.density()).epsilon(0.2));
}
