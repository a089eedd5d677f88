#include "genlab/algorithms/algorithms.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"

namespace genlab::algorithms {

GenericAlgorithm generic_order_find(unsigned n) {
    return [n](GroupApi& api, Rng&) -> AlgorithmOutput {
        require(n >= 1 && n < 62, "generic_order_find: bit length out of range");
        const auto& in = api.inputs();
        require(!in.empty(), "generic_order_find: expects input g");
        Element g = in[0];
        u64 bound = u64(1) << n;
        u64 s = 1;
        while (s * s < bound) ++s;
        if (s < 2) s = 2;
        std::vector<Element> babies{api.op(g, g, true), g};
        while (babies.size() < s) babies.push_back(api.op(babies.back(), g, false));
        Element G = api.op(babies.back(), g, false);
        Element y = G;
        for (u64 k = 1; k <= s; ++k) {
            if (k > 1) y = api.op(y, G, false);
            for (u64 j = 0; j < s; ++j)
                if (api.equal(y, babies[j])) return AlgorithmOutput::value(BigInt(k * s - j));
        }
        return AlgorithmOutput::fail();
    };
}

}  // namespace genlab::algorithms

namespace genlab::algorithms {

namespace {

std::optional<u64> find_order(GroupApi& api, unsigned n) {
    Rng unused(0);
    auto out = generic_order_find(n)(api, unused);
    if (out.failed || out.values.empty()) return std::nullopt;
    return static_cast<u64>(out.values[0]);
}

}  // namespace

GenericAlgorithm random_multiple_order_find(unsigned n, std::size_t walkers, unsigned spread) {
    return [n, walkers, spread](GroupApi& api, Rng& rng) -> AlgorithmOutput {
        require(n + spread < 62, "random_multiple_order_find: range too large");
        Element g = api.inputs().at(0);
        std::vector<std::pair<Element, u64>> seen{{api.op(g, g, true), 0}};
        u64 d = 0;
        for (std::size_t i = 0; i < walkers; ++i) {
            u64 r = 1 + uniform_below(rng, (u64(1) << (n + spread)) - 1);
            Element w = oracle::scalar_mul(api, g, r);
            for (const auto& [e, v] : seen) {
                if (v == r) continue;
                if (api.equal(w, e)) d = algebra::gcd_u64(d, r > v ? r - v : v - r);
            }
            seen.emplace_back(w, r);
        }
        if (d == 0) return AlgorithmOutput::fail();
        return AlgorithmOutput::value(BigInt(d));
    };
}

GenericAlgorithm order_root_extractor(unsigned n, u64 e) {
    return [n, e](GroupApi& api, Rng&) -> AlgorithmOutput {
        require(api.inputs().size() >= 2, "order_root_extractor: expects inputs (g, g^x)");
        auto N = find_order(api, n);
        if (!N) return AlgorithmOutput::fail();
        auto d = algebra::inv_mod(e % *N, *N);
        if (!d) return AlgorithmOutput::fail();
        AlgorithmOutput out = AlgorithmOutput::value(BigInt(e));
        out.elements.push_back(oracle::scalar_mul(api, api.inputs()[1], *d));
        return out;
    };
}

GenericAlgorithm trivial_root_claim(u64 e) {
    return [e](GroupApi& api, Rng&) -> AlgorithmOutput {
        AlgorithmOutput out = AlgorithmOutput::value(BigInt(e));
        out.elements.push_back(api.inputs().at(1));
        return out;
    };
}

GenericAlgorithm honest_squaring(u64 t) {
    return [t](GroupApi& api, Rng&) -> AlgorithmOutput {
        Element y = api.inputs().at(0);
        for (u64 i = 0; i < t; ++i) y = api.op(y, y, false);
        AlgorithmOutput out;
        out.elements.push_back(y);
        return out;
    };
}

GenericAlgorithm shortcut_squaring(unsigned n, u64 t) {
    return [n, t](GroupApi& api, Rng&) -> AlgorithmOutput {
        auto N = find_order(api, n);
        if (!N) return AlgorithmOutput::fail();
        AlgorithmOutput out;
        out.elements.push_back(oracle::scalar_mul(api, api.inputs().at(0), algebra::pow_mod(2, t, *N)));
        return out;
    };
}

GenericAlgorithm truncated_squaring(u64 T) { return honest_squaring(T); }

}  // namespace genlab::algorithms
