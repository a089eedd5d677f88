#pragma once

#include "genlab/algebra/factor.hpp"
#include "genlab/oracle/group_api.hpp"
#include "genlab/oracle/transcript.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace genlab::oracle {

struct GroupSpec {
    u64 order = 0;
    bool known_order = true;
    std::optional<algebra::Factorization> factorization;
    unsigned bit_length = 0;  // defaults to ceil(log2 order)

    static GroupSpec prime(u64 p);
    static GroupSpec composite(u64 n);
    static GroupSpec hidden(u64 n, unsigned bits);

    GroupInfo public_info() const;
};

struct InputSpec {
    u64 exponent = 0;
    int variable = 0;  // 0: public constant with value `exponent`
};

struct SessionOptions {
    u64 budget = UINT64_MAX;
    bool ddh_enabled = false;
    u64 ddh_budget = UINT64_MAX;
    bool dl_enabled = false;
    u64 dl_budget = 0;
    u64 challenges = 0;
    std::size_t nvars = 0;          // total variables tracked for this session
    int first_challenge_variable = 1;
    std::uint64_t challenge_seed = 0;
    std::vector<u64> preset_challenges;  // when non-empty, handed out in order instead of sampling
};

class OracleSession : public GroupApi {
public:
    OracleSession(GroupSpec spec, std::vector<InputSpec> inputs, SessionOptions opts = {});

    const GroupInfo& info() const override { return info_; }
    const std::vector<Element>& inputs() const override { return input_wires_; }

    Element label(u64 value) override;
    Element op(Element a, Element b, bool subtract) override;
    bool equal(Element a, Element b) override;
    bool ddh(Element a, Element b, Element c) override;
    std::optional<u64> dl(Element a) override;
    Element challenge() override;

    u64 ops_used() const override { return transcript_.tallies.element_ops(); }
    u64 ops_budget() const override { return budget_; }
    void lift_budget(u64 extra) override;

    const GroupSpec& spec() const { return spec_; }
    const Transcript& transcript() const { return transcript_; }
    Transcript& transcript() { return transcript_; }

    // Harness-side view; not reachable through GroupApi.
    std::optional<u64> hidden_exponent(Element e) const;
    const std::vector<u64>& challenge_values() const { return challenge_values_; }

protected:
    Element new_wire(std::optional<u64> exponent);
    const std::optional<u64>& wire(Element e) const;
    GateRecord& push(GateKind kind);
    void charge();

    GroupSpec spec_;
    GroupInfo info_;
    SessionOptions opts_;
    u64 budget_;
    std::vector<std::optional<u64>> wires_;
    std::vector<Element> input_wires_;
    std::set<std::pair<std::uint32_t, std::uint32_t>> asked_;
    std::vector<u64> challenge_values_;
    Rng challenge_rng_;
    Transcript transcript_;
};

// Plays the game against a live session and stores the output in its transcript.
AlgorithmOutput play_live(const Game& game, OracleSession& session);

}  // namespace genlab::oracle
