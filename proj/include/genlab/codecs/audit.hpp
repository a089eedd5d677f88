#pragma once

#include "genlab/codecs/codec.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace genlab::codecs {

struct TrialResult {
    bool success = false;     // the algorithm won its game
    bool bottom = true;       // encoder produced ⊥
    bool decoded = false;     // decoder output equals the message
    bool fallback = false;    // decoder guessed from the shared stream
    bool in_range = true;     // packed codeword below |C|
};

// One encode/decode round trip through the packed codeword.
TrialResult run_trial(const Codec& codec, std::uint64_t seed, std::uint64_t trial);

struct AuditRow {
    std::string codec;
    std::string algorithm;
    std::string group;
    std::uint64_t T = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t roundtrips = 0;  // successes decoded without falling back
    std::uint64_t decoded = 0;
    double eps_hat = 0;            // decoder success rate
    double m_bits = 0;             // log2 |C|
    double log_m = 0;              // log2 |M|
    double slack_bits = 0;         // m_bits - log_m - log2 eps_hat
    double sigma = 0;
    bool pass = false;             // eps_hat - 3 sigma <= 2^m / |M|

    bool roundtrip_complete() const { return roundtrips == successes; }
};

AuditRow audit_compression(const Codec& codec, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

void write_audit_header(std::ostream& os);
void write_audit_row(std::ostream& os, const AuditRow& row);

// Runs fn(i) for i in [0, count) on up to `threads` workers; results stay indexed by i.
template <class Result, class Fn>
std::vector<Result> parallel_trials(std::uint64_t count, unsigned threads, Fn fn);

}  // namespace genlab::codecs

#include "genlab/codecs/parallel.ipp"
