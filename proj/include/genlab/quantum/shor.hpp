#pragma once

#include "genlab/quantum/program.hpp"

#include <optional>
#include <vector>

namespace genlab::quantum {

// Control qubit names: a0..a{n-1} multiply g^(2^i), b0..b{n-1} multiply h^(2^i).
Program shor_dl_program(u64 N, u64 x);

// ℓ = round(cN/2^n), k = round(dN/2^n), x = k ℓ^-1; 0 when ℓ is not invertible.
u64 shor_dl_postprocess(u64 N, unsigned n, u64 c, u64 d);

struct ShorDlResult {
    u64 candidate = 0;           // from one sampled measurement
    double success = 0;          // exact probability that post-processing returns x
    std::vector<double> distribution;  // over (c, d), c most significant
    unsigned qubits = 0;         // per control register
    DelegationTally tally;
};

// Group of prime order N with generator exponent 1 and h = g^x.
ShorDlResult shor_dl_qggm(u64 N, u64 x, Rng& rng, RunMode mode = RunMode::Monolithic);

// Control qubits c0..c{m-1}; constants a^(2^i) are squared classically.
Program shor_order_program(u64 N, u64 a, unsigned control_qubits);

// Smallest convergent denominator q <= N of c / 2^m with a^q = 1 mod N.
std::optional<u64> order_from_measurement(u64 N, u64 a, unsigned m, u64 c);

// 1 < gcd(Z, N) < N for Z = a^(r/2) - 1 computed over the integers (r even).
bool factoring_output_valid(u64 N, u64 a, u64 r);

struct ShorOrderResult {
    u64 order = 0;               // true multiplicative order
    std::optional<u64> candidate;
    double success = 0;
    std::vector<double> distribution;
    unsigned qubits = 0;
    bool factor_ok = false;      // validator on the true order
    DelegationTally tally;
};

ShorOrderResult shor_order_qgrm(u64 N, u64 a, Rng& rng, unsigned control_qubits = 0,
                                RunMode mode = RunMode::Monolithic);

}  // namespace genlab::quantum
