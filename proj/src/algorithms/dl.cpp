#include "genlab/algorithms/algorithms.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"

#include <algorithm>
#include <set>

namespace genlab::algorithms {

using algebra::mul_mod;

u64 shared_bsgs_steps(u64 T, std::size_t targets) {
    if (T < 1) return 0;
    u64 s = 1;
    for (;;) {
        u64 next = s + 1;
        u64 cost = (next - 1) + 1 + targets * (next - 1);
        if (cost > T) return s;
        s = next;
    }
}

std::vector<std::optional<u64>> shared_bsgs(GroupApi& api, Element g, const std::vector<Element>& targets, u64 s) {
    std::vector<std::optional<u64>> out(targets.size());
    if (s == 0) return out;
    std::vector<Element> babies{api.label(0)};
    if (s >= 2) babies.push_back(g);
    while (babies.size() < s) babies.push_back(api.op(babies.back(), g, false));
    Element giant_step = s == 1 ? g : api.op(babies.back(), g, false);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        Element y = targets[i];
        for (u64 k = 0; k < s && !out[i]; ++k) {
            if (k > 0) y = api.op(y, giant_step, true);
            for (u64 j = 0; j < s; ++j) {
                if (api.equal(y, babies[j])) {
                    out[i] = j + k * s;
                    break;
                }
            }
        }
    }
    return out;
}

GenericAlgorithm bsgs_dl(u64 T) {
    return [T](GroupApi& api, Rng&) -> AlgorithmOutput {
        u64 s = T / 2;
        if (s == 0) return AlgorithmOutput::fail();
        const auto& in = api.inputs();
        require(in.size() >= 2, "bsgs_dl: expects inputs (g, h)");
        auto r = shared_bsgs(api, in[0], {in[1]}, s);
        if (!r[0]) return AlgorithmOutput::fail();
        u64 x = *r[0];
        if (api.info().known_order) x %= api.info().order;
        return AlgorithmOutput::value(x);
    };
}

GenericAlgorithm random_collision_dl(u64 T) {
    return [T](GroupApi& api, Rng& rng) -> AlgorithmOutput {
        if (T == 0) return AlgorithmOutput::fail();
        const auto& in = api.inputs();
        require(in.size() >= 2 && api.info().known_order, "random_collision_dl: expects a known-order (g, h) session");
        u64 N = api.info().order;
        if (N == 1) return AlgorithmOutput::value(0);
        u64 delta = 1 + uniform_below(rng, N - 1);
        Element d = api.label(delta);
        u64 gside_target = std::min<u64>((T - 1) / 2, N - 1);
        u64 hside_target = std::min<u64>(T - 1 - (T - 1) / 2, N - 1);
        std::vector<std::pair<Element, u64>> gside{{in[0], 1 % N}};  // wire, known exponent
        std::vector<std::pair<Element, u64>> hside{{in[1], 0}};       // wire, k (exponent x + k delta)
        std::set<u64> used{1 % N};
        auto solve = [&](u64 r, u64 k) { return algebra::sub_mod(r, mul_mod(k, delta, N), N); };
        for (const auto& [w, r] : gside)
            if (api.equal(hside[0].first, w)) return AlgorithmOutput::value(solve(r, 0));
        u64 gmade = 0, hmade = 0;
        while (gmade < gside_target || hmade < hside_target) {
            if (gmade <= hmade && gmade < gside_target) {
                u64 r;
                do r = uniform_below(rng, N);
                while (used.count(r));
                used.insert(r);
                Element w = api.label(r);
                ++gmade;
                for (const auto& [hw, k] : hside)
                    if (api.equal(hw, w)) return AlgorithmOutput::value(solve(r, k));
                gside.emplace_back(w, r);
            } else {
                u64 k = hside.size();
                Element w = api.op(hside.back().first, d, false);
                ++hmade;
                for (const auto& [gw, r] : gside)
                    if (api.equal(w, gw)) return AlgorithmOutput::value(solve(r, k));
                hside.emplace_back(w, k);
            }
        }
        return AlgorithmOutput::fail();
    };
}

GenericAlgorithm pohlig_hellman_dl(algebra::Factorization factorization) {
    return [f = std::move(factorization)](GroupApi& api, Rng&) -> AlgorithmOutput {
        const auto& in = api.inputs();
        require(in.size() >= 2 && api.info().known_order, "pohlig_hellman_dl: expects a known-order (g, h) session");
        u64 N = api.info().order;
        require(f.product() == N, "pohlig_hellman_dl: factorization does not match the group order");
        Element h = in[1];
        u64 x = 0, mod = 1;
        for (const auto& [pb, e] : f.factors) {
            u64 p = static_cast<u64>(pb);
            u64 pe = 1;
            for (unsigned i = 0; i < e; ++i) pe *= p;
            u64 cof = N / p;  // generator of the order-p subgroup: cof * g
            u64 s = 1;
            while (s * s < p) ++s;
            std::vector<Element> babies;
            for (u64 j = 0; j < s; ++j) babies.push_back(api.label(mul_mod(j, cof, N)));
            Element G = api.label(mul_mod(s, cof, N));
            u64 xp = 0, pj = 1;  // x mod p^e, built digit by digit
            for (unsigned j = 0; j < e; ++j) {
                // (N / p^{j+1}) (h - xp g) has exponent digit_j * cof
                Element shifted = api.op(h, api.label(xp), true);
                Element y = oracle::scalar_mul(api, shifted, N / (pj * p));
                std::optional<u64> digit;
                for (u64 k = 0; k < s && !digit; ++k) {
                    if (k > 0) y = api.op(y, G, true);
                    for (u64 b = 0; b < s; ++b) {
                        if (api.equal(y, babies[b])) {
                            digit = b + k * s;
                            break;
                        }
                    }
                }
                if (!digit || *digit >= p) return AlgorithmOutput::fail();
                xp += *digit * pj;
                pj *= p;
            }
            x = mod == 1 ? xp % pe : algebra::crt_pair(x, mod, xp, pe);
            mod *= pe;
        }
        return AlgorithmOutput::value(x % N);
    };
}

GenericAlgorithm mdl_shared_bsgs(std::size_t m, u64 T) {
    return [m, T](GroupApi& api, Rng&) -> AlgorithmOutput {
        const auto& in = api.inputs();
        require(in.size() >= m + 1, "mdl_shared_bsgs: expects inputs (g, h1..hm)");
        u64 s = shared_bsgs_steps(T, m);
        std::vector<Element> targets(in.begin() + 1, in.begin() + 1 + static_cast<std::ptrdiff_t>(m));
        auto r = shared_bsgs(api, in[0], targets, s);
        AlgorithmOutput out;
        for (auto& v : r) {
            if (!v) return AlgorithmOutput::fail();
            out.values.emplace_back(*v % api.info().order);
        }
        return out;
    };
}

GenericAlgorithm omdl_adversary(std::size_t q, std::size_t n, std::size_t m, u64 T) {
    return [q, n, m, T](GroupApi& api, Rng&) -> AlgorithmOutput {
        require(n <= m, "omdl_adversary: n must not exceed m");
        const auto& in = api.inputs();
        require(!in.empty(), "omdl_adversary: expects input g");
        Element g = in[0];
        std::vector<Element> chal;
        for (std::size_t i = 0; i < q + m; ++i) chal.push_back(api.challenge());
        AlgorithmOutput out;
        for (std::size_t i = 0; i < q; ++i) {
            auto z = api.dl(chal[i]);
            if (!z) return AlgorithmOutput::fail();
            out.values.emplace_back(*z);
        }
        if (n > 0) {
            u64 s = shared_bsgs_steps(T, n);
            std::vector<Element> targets(chal.begin() + static_cast<std::ptrdiff_t>(q),
                                         chal.begin() + static_cast<std::ptrdiff_t>(q + n));
            auto r = shared_bsgs(api, g, targets, s);
            for (auto& v : r) {
                if (!v) return AlgorithmOutput::fail();
                out.values.emplace_back(*v % api.info().order);
            }
        }
        return out;
    };
}

GenericAlgorithm gap_dl_adversary(u64 T) {
    return [T](GroupApi& api, Rng& rng) -> AlgorithmOutput {
        const auto& in = api.inputs();
        require(in.size() >= 2 && api.info().known_order, "gap_dl_adversary: expects a known-order (g, h) session");
        u64 p = api.info().order;
        Element h = in[1];
        if (T < 2) return AlgorithmOutput::fail();
        u64 linear = std::min<u64>(T / 2, p);
        std::set<u64> guessed;
        for (u64 i = 0; i < linear; ++i) {
            u64 r;
            do r = uniform_below(rng, p);
            while (guessed.count(r));
            guessed.insert(r);
            if (api.equal(h, api.label(r))) return AlgorithmOutput::value(r);
        }
        std::set<u64> squares;
        while (api.ops_left() >= 2 && squares.size() < p) {
            u64 k;
            do k = uniform_below(rng, p);
            while (squares.count(k));
            squares.insert(k);
            if (!api.ddh(h, h, api.label(k))) continue;
            auto roots = algebra::sqrt_mod_prime(k, p);
            if (roots.size() == 1) return AlgorithmOutput::value(roots[0]);
            if (api.equal(h, api.label(roots[0]))) return AlgorithmOutput::value(roots[0]);
            return AlgorithmOutput::value(roots[1]);
        }
        return AlgorithmOutput::fail();
    };
}

GenericAlgorithm gap_cdh_adversary(u64 T) {
    return [T](GroupApi& api, Rng&) -> AlgorithmOutput {
        const auto& in = api.inputs();
        require(in.size() >= 3 && api.info().known_order, "gap_cdh_adversary: expects (g, g^x, g^y)");
        u64 reserve = 2 * algebra::ceil_log2(api.info().order) + 1;
        if (T <= reserve) return AlgorithmOutput::fail();
        u64 s = shared_bsgs_steps(T - reserve, 1);
        auto r = shared_bsgs(api, in[0], {in[1]}, s);
        if (!r[0]) return AlgorithmOutput::fail();
        AlgorithmOutput out;
        out.elements.push_back(oracle::scalar_mul(api, in[2], *r[0] % api.info().order));
        return out;
    };
}

}  // namespace genlab::algorithms
