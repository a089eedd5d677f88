#pragma once

#include "genlab/algebra/factor.hpp"
#include "genlab/oracle/group_api.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace genlab::algorithms {

using oracle::AlgorithmOutput;
using oracle::Element;
using oracle::GenericAlgorithm;
using oracle::GroupApi;
using u64 = std::uint64_t;

// Input conventions: DL sessions expose (g, h); MDL sessions (g, h1..hm);
// gap-CDH sessions (g, g^x, g^y); unknown-order and OM-DL sessions just (g).

// Baby-step giant-step with s = floor(T/2): solves x < s*s using 2s-1 element gates.
GenericAlgorithm bsgs_dl(u64 T);

// Birthday tester: distinct random labels on the g side against h + k*delta on the h side.
GenericAlgorithm random_collision_dl(u64 T);

// Known factorization of the group order required.
GenericAlgorithm pohlig_hellman_dl(algebra::Factorization factorization);

// One shared set of baby steps, then giant steps for each h_i in turn.
GenericAlgorithm mdl_shared_bsgs(std::size_t m, u64 T);

// Hidden order below 2^n: babies g^0..g^{s-1}, giants g^{ks}, s = ceil(sqrt(2^n)).
GenericAlgorithm generic_order_find(unsigned n);

// Compares random multiples [r_i] g (r_i < 2^(n+spread)) against the identity and
// each other; outputs the gcd of every collision difference found.
GenericAlgorithm random_multiple_order_find(unsigned n, std::size_t walkers, unsigned spread);

// Root extraction on inputs (g, g^x): finds the order, then outputs (e, [e^-1] g^x).
GenericAlgorithm order_root_extractor(unsigned n, u64 e);

// Claims the input itself is an e-th root of itself.
GenericAlgorithm trivial_root_claim(u64 e);

// Repeated squaring provers on input g; the element output should equal g^(2^t).
GenericAlgorithm honest_squaring(u64 t);
GenericAlgorithm shortcut_squaring(unsigned n, u64 t);   // order finding, then [2^t mod N] g
GenericAlgorithm truncated_squaring(u64 T);              // T doublings only

// Draws q+m challenges, spends the q dl queries on the first q, then shared-baby
// BSGS on the next n. Outputs q+n exponents.
GenericAlgorithm omdl_adversary(std::size_t q, std::size_t n, std::size_t m, u64 T);

// Gap-DL: half the budget on random linear guesses, the rest on DDH(h, h, g^k)
// square tests; a hit yields x^2 = k and the root is picked with an equality gate.
GenericAlgorithm gap_dl_adversary(u64 T);

// Gap-CDH: BSGS for x, then outputs [x] g^y as an element.
GenericAlgorithm gap_cdh_adversary(u64 T);

// Baby-step giant-step over shared babies; returns x_i < s*s or nullopt for each target.
std::vector<std::optional<u64>> shared_bsgs(GroupApi& api, Element g, const std::vector<Element>& targets, u64 s);

// Largest s with (s - 1) + 1 + targets * (s - 1) <= T.
u64 shared_bsgs_steps(u64 T, std::size_t targets);

}  // namespace genlab::algorithms
