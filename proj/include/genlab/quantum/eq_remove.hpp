#pragma once

#include "genlab/oracle/group_api.hpp"

#include <cstdint>
#include <ostream>

namespace genlab::quantum {

struct EqRemoveConfig {
    std::uint64_t N = 101 * 103;
    std::uint64_t C = 10;  // classical element-gate budget
    std::uint64_t trials = 5000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct EqRemoveReport {
    std::uint64_t N = 0, p = 0, C = 0, m = 1, trials = 0;
    std::uint64_t agree = 0;
    std::uint64_t stripped = 0;     // equality gates answered without the oracle
    double agreement = 0;
    double bound = 0;  // 1 - (C+m+1)^2 / (2p)
    double sigma = 0;
    bool pass = false;

    static void write_header(std::ostream& os);
    void write_row(std::ostream& os, const char* algorithm) const;
};

// Runs alg on (g, g^x) for uniform x twice per trial: against the live oracle,
// and with every equality gate answered by polynomial identity. Counts trials
// whose outputs coincide.
EqRemoveReport remove_classical_equalities(const oracle::GenericAlgorithm& alg, const EqRemoveConfig& cfg);

// Only compares wires whose polynomials coincide (g+h against h+g and so on).
oracle::GenericAlgorithm identity_checks_only(std::uint64_t C);

}  // namespace genlab::quantum
