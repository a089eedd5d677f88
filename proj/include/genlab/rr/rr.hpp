#pragma once

#include "genlab/common/bigint.hpp"
#include "genlab/common/rng.hpp"
#include "genlab/oracle/group_api.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genlab::rr {

using u64 = std::uint64_t;
using Label = unsigned __int128;

std::string label_hex(Label l);

// Label set S = [0, size). Defaults to 2^(ceil(log2 N) + 64), capped at 2^127.
struct LabelSpace {
    u64 order = 0;
    Label size = 0;

    static LabelSpace standard(u64 order);
    static LabelSpace of_size(u64 order, Label size);
};

struct RrOutput {
    bool failed = false;
    std::vector<BigInt> values;
    std::vector<std::optional<Label>> labels;  // nullopt: the algorithm output ⊥

    static RrOutput fail() { return {true, {}, {}}; }
};

// What a random-representation algorithm sees. Equality is label comparison.
class RrApi {
public:
    virtual ~RrApi() = default;
    virtual u64 order() const = 0;
    virtual Label space_size() const = 0;
    virtual const std::vector<Label>& inputs() const = 0;
    virtual Label label(u64 x) = 0;
    virtual std::optional<Label> op(Label a, Label b, bool subtract) = 0;
    virtual u64 queries() const = 0;
};

using RrAlgorithm = std::function<RrOutput(RrApi&, Rng&)>;

// Streams shared by a native run and its translation: fresh labels and exponent draws.
struct CoupledStreams {
    Rng labels;
    Rng exponents;
    explicit CoupledStreams(u64 seed);
};

// Ground truth: a lazily sampled uniform injection L: Z_N -> S.
class RrOracle : public RrApi {
public:
    RrOracle(LabelSpace space, const std::vector<u64>& input_exponents, u64 seed);

    u64 order() const override { return space_.order; }
    Label space_size() const override { return space_.size; }
    const std::vector<Label>& inputs() const override { return inputs_; }
    Label label(u64 x) override;
    std::optional<Label> op(Label a, Label b, bool subtract) override;
    u64 queries() const override { return queries_; }

    // Preimage of a label, deciding lazily whether an unseen label is in the image.
    std::optional<u64> resolve(Label l);

private:
    Label assign(u64 x);
    Label fresh_label();

    LabelSpace space_;
    CoupledStreams streams_;
    std::map<u64, Label> forward_;
    std::map<Label, std::optional<u64>> backward_;  // nullopt: known not to be an image
    std::vector<Label> inputs_;
    u64 queries_ = 0;
};

// Type-safe algorithm B built around an RR algorithm A. retries = 0 is the
// faithful translation (unseen labels raise UnfaithfulQuery); retries >= 1
// samples a preimage for an unseen label with up to `retries` labeling gates.
oracle::GenericAlgorithm translate(RrAlgorithm alg, LabelSpace space, unsigned retries, u64 seed);
oracle::GenericAlgorithm translate_faithful(RrAlgorithm alg, LabelSpace space, u64 seed);
oracle::GenericAlgorithm translate_general(RrAlgorithm alg, LabelSpace space, unsigned retries, u64 seed);

// Result of one run, in exponent form so native and translated runs compare directly.
struct RunOutcome {
    bool failed = false;
    std::vector<BigInt> values;
    std::vector<std::optional<u64>> exponents;
    u64 queries = 0;       // RR queries made by A
    u64 element_gates = 0; // type-safe element gates (translated runs)

    bool same_result(const RunOutcome& o) const {
        return failed == o.failed && values == o.values && exponents == o.exponents;
    }
};

RunOutcome run_native(const RrAlgorithm& alg, LabelSpace space, const std::vector<u64>& inputs, u64 seed);
// retries as in translate().
RunOutcome run_translated(const RrAlgorithm& alg, LabelSpace space, const std::vector<u64>& inputs, u64 seed,
                          unsigned retries);

// Test algorithms. Inputs (L(1), L(x)).
RrAlgorithm rr_bsgs(u64 T);
// `labels` labeling queries at random exponents, then one group operation on a
// label never seen before; outputs the resulting label.
RrAlgorithm unfaithful_probe(std::size_t labels);

}  // namespace genlab::rr
