#pragma once

#include "genlab/codecs/codec.hpp"
#include "genlab/oracle/group_api.hpp"

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace genlab::harness {

using u64 = std::uint64_t;

// Everything a run depends on. Zero or empty fields take the experiment's default.
struct ExperimentConfig {
    std::string experiment;      // dl-bound, mdl-bound, ..., eq-remove
    std::string codec;           // audit-codec: dl mdl omdl gap-dl gap-cdh order rsa rsa-two
    std::string algo;
    std::string problem = "dl";  // gap-bound: dl | cdh
    std::string variant = "order";  // order-bound: order | rsa | rsa-two
    std::string game = "root";      // audit-root-repeated: root | squaring

    u64 modulus = 0;        // prime p, group order N, or field size q
    unsigned bits = 8;      // hidden-order prime size n
    std::vector<u64> ops;   // element-gate budgets T, one row each
    u64 trials = 1000;
    u64 seed = 0;
    unsigned threads = 1;

    std::size_t m = 3;      // mdl instances; omdl unsolved challenges
    std::size_t q = 2;      // omdl dl queries
    std::size_t solve = 1;  // omdl extra solutions n
    u64 ddh = 0;            // ddh budget; 0 means T/2
    u64 exponent = 3;       // root extraction e
    u64 squarings = 16;     // repeated squaring t
    std::size_t walkers = 24;
    unsigned spread = 4;

    unsigned retries = 2;   // rr-translate r
    u64 label_space = 0;    // rr-translate |S|; 0 means the standard size

    u64 smooth_bound = 30;
    bool idealized = false;
    double density = 0.05;  // idealized p_S
    u64 samples = 10000;
    u64 batch = 1;
    u64 subspaces = 20;
    u64 attempts = 4000;

    std::string program = "shor-dl";  // shor-dl | shor-order | path to a JSON program
    u64 x = 5;
    u64 base = 2;
    unsigned control_qubits = 0;
    bool delegated = false;
    double min_success = 0;

    std::string transcript;  // JSONL path for the first trial's live transcript

    void write(std::ostream& os) const;  // key=value lines
};

const std::vector<std::string>& experiment_names();

// Writes the CSV (header row first) and returns false iff an asserted bound fails.
// Invalid configurations raise ConfigError.
bool run_experiment(const ExperimentConfig& cfg, std::ostream& csv);

// Building blocks shared with the tests.
oracle::GenericAlgorithm make_algorithm(const std::string& name, const ExperimentConfig& cfg, u64 T);
std::unique_ptr<codecs::Codec> make_codec(const std::string& codec, const ExperimentConfig& cfg, u64 T);
// Closed-form success bound for a codec family at budget T.
double family_bound(const std::string& codec, const ExperimentConfig& cfg, u64 T);

}  // namespace genlab::harness
