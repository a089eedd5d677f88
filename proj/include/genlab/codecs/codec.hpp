#pragma once

#include "genlab/codecs/encoding.hpp"
#include "genlab/common/rng.hpp"
#include "genlab/oracle/session.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace genlab::codecs {

using oracle::GenericAlgorithm;
using u64 = std::uint64_t;
using Message = std::vector<BigInt>;

// Per-trial randomness. The algorithm and shared streams are visible to both
// encoder and decoder; the instance stream only to the encoder.
struct TrialSeeds {
    std::uint64_t instance = 0;
    std::uint64_t algorithm = 0;
    std::uint64_t shared = 0;
};
TrialSeeds trial_seeds(std::uint64_t seed, std::uint64_t trial);

struct LiveRun {
    oracle::AlgorithmOutput output;
    oracle::Transcript transcript;
    bool success = false;
};

struct Decoded {
    Message message;
    bool fallback = false;  // ⊥ or failed replay: uniform guess from the shared stream
};

class Codec {
public:
    Codec(CodecKind kind, std::string algorithm, u64 T) : kind_(kind), algorithm_(std::move(algorithm)), T_(T) {}
    virtual ~Codec() = default;

    CodecKind kind() const { return kind_; }
    const std::string& algorithm() const { return algorithm_; }
    u64 budget() const { return T_; }

    virtual std::string group_label() const = 0;
    virtual BigInt message_space() const = 0;
    virtual CodeSpace space() const = 0;
    virtual Message sample_message(Rng& rng) const = 0;
    virtual LiveRun run_live(const Message& msg, const TrialSeeds& seeds) const = 0;
    virtual Encoding encode(const LiveRun& run, const Message& msg, const TrialSeeds& seeds) const = 0;
    // Oracle-free reconstruction; throws DecodeFailure or NotInformative.
    virtual Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const = 0;

    Decoded decode(const Encoding& enc, const TrialSeeds& seeds) const;

private:
    CodecKind kind_;
    std::string algorithm_;
    u64 T_;
};

// Known prime order p. T is the algorithm's element-gate budget; the verifier's
// check gates come on top of it.
std::unique_ptr<Codec> make_dl_codec(u64 p, u64 T, GenericAlgorithm alg, std::string name);
std::unique_ptr<Codec> make_mdl_codec(u64 p, std::size_t m, u64 T, GenericAlgorithm alg, std::string name);
std::unique_ptr<Codec> make_gap_dl_codec(u64 p, u64 T, u64 ddh_budget, GenericAlgorithm alg, std::string name);
std::unique_ptr<Codec> make_gap_cdh_codec(u64 p, u64 T, u64 ddh_budget, GenericAlgorithm alg, std::string name);
// q dl queries, q + m challenges, q + n of them to be solved.
std::unique_ptr<Codec> make_omdl_codec(u64 p, std::size_t q, std::size_t n, std::size_t m, u64 T, GenericAlgorithm alg,
                                       std::string name);

// Hidden order: an n-bit prime (Order) or a product of two n-bit primes (Rsa, RsaTwo).
enum class HiddenGame { OrderFind, RootExtraction, RepeatedSquaring };
const char* hidden_game_name(HiddenGame g);

struct HiddenOrderConfig {
    CodecKind variant = CodecKind::Order;
    HiddenGame game = HiddenGame::OrderFind;
    unsigned n = 8;
    u64 T = 64;
    u64 squarings = 0;         // repeated squaring: verifier checks g^(2^t)
    unsigned root_x_bits = 16; // root extraction: x uniform below 2^bits from the shared stream
    GenericAlgorithm alg;
    std::string name;
};
std::unique_ptr<Codec> make_hidden_order_codec(HiddenOrderConfig cfg);

// All n-bit primes, ascending.
std::vector<u64> nbit_primes(unsigned n);

}  // namespace genlab::codecs
