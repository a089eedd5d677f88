#pragma once

#include "genlab/oracle/session.hpp"
#include "genlab/tracker/tracker.hpp"

#include <exception>
#include <type_traits>
#include <set>
#include <utility>
#include <vector>

namespace genlab::tracker {

using oracle::Element;
using oracle::GroupInfo;
using oracle::InputSpec;
using oracle::SessionOptions;

// Thrown inside the replayed algorithm once the last directive is consumed.
struct ReplayCut : std::exception {
    const char* what() const noexcept override { return "replay reached its cut point"; }
};

struct Directive {
    enum class By { Ordinal, Sequence };
    By by = By::Ordinal;
    u64 value = 0;

    static Directive ordinal(u64 v) { return {By::Ordinal, v}; }
    static Directive sequence(u64 v) { return {By::Sequence, v}; }
};

struct ReplayPlan {
    std::vector<Directive> directives;  // increasing
    std::vector<u64> dl_answers;         // consumed in order
    bool halt = true;                    // stop at the last directive / answer
};

// Runs a generic algorithm without any hidden values: every comparison is
// answered from the zero set (1 iff the relation is already implied), except
// the directed ones, which are answered 1 and inserted.
template <class Domain>
class ReplaySession : public oracle::GroupApi {
public:
    ReplaySession(GroupInfo info, const std::vector<InputSpec>& inputs, SessionOptions opts, Domain dom, ReplayPlan plan)
        : info_(info), opts_(opts), budget_(opts.budget), tracker_(dom), plan_(std::move(plan)) {
        for (const auto& in : inputs) {
            std::uint32_t id = in.variable > 0 ? tracker_.push_wire(dom.variable(static_cast<std::size_t>(in.variable)))
                                               : tracker_.push_wire(dom.constant(in.exponent));
            input_wires_.push_back(Element{id});
            tick(false);
        }
    }

    const GroupInfo& info() const override { return info_; }
    const std::vector<Element>& inputs() const override { return input_wires_; }

    Element label(u64 value) override {
        require(info_.known_order, "labeling gate is disabled in unknown-order sessions");
        charge();
        tick(false);
        ++ops_;
        if (value >= info_.order) return Element{tracker_.push_wire(std::nullopt)};
        return Element{tracker_.push_wire(tracker_.domain().constant(value))};
    }

    Element op(Element a, Element b, bool subtract) override {
        tracker_.poly(a.id);
        tracker_.poly(b.id);
        charge();
        tick(false);
        ++ops_;
        return Element{tracker_.push_op(a.id, b.id, subtract)};
    }

    bool equal(Element a, Element b) override {
        const auto& pa = tracker_.poly(a.id);
        const auto& pb = tracker_.poly(b.id);
        require(asked_.insert(std::minmax(a.id, b.id)).second, "equality gate repeated on the same pair of wires");
        bool directed = tick(true);
        tracker_.count_comparison();
        if (!pa || !pb) {
            if (directed) throw DecodeFailure("replay: directive points at a comparison with an invalid wire");
            return log(false);
        }
        auto rel = *pa - *pb;
        return log(answer_linear(rel, directed, oracle::GateKind::Equality, {a.id, b.id}));
    }

    bool ddh(Element a, Element b, Element c) override {
        require(opts_.ddh_enabled, "ddh oracle not enabled for this session");
        if constexpr (!std::is_same_v<Domain, ModDomain>) {
            (void)a;
            (void)b;
            (void)c;
            throw ContractViolation("ddh replay needs a known prime order");
        } else {
            if (ddh_used_ >= opts_.ddh_budget) throw BudgetExceeded("ddh query budget exhausted");
            ++ddh_used_;
            bool directed = tick(true);
            tracker_.count_comparison();
            auto q = tracker_.ddh_relation(a.id, b.id, c.id);
            if (!q) {
                if (directed) throw DecodeFailure("replay: directive points at a comparison with an invalid wire");
                return log(false);
            }
            if (q->is_linear())
                return log(answer_linear(q->linear_part(), directed, oracle::GateKind::Ddh, {a.id, b.id, c.id}));
            if (!directed) return log(false);
            last_quadratic_ = *q;
            answers_.push_back(1);
            consumed_directive();
            return true;
        }
    }

    std::optional<u64> dl(Element a) override {
        require(opts_.dl_enabled, "dl oracle not enabled for this session");
        const auto& pa = tracker_.poly(a.id);
        bool directed = tick(true);
        tracker_.count_comparison();
        ++dl_used_;
        if (directed) throw DecodeFailure("replay: directive points at a dl query");
        if (dl_used_ > opts_.dl_budget || !pa) {
            answers_.push_back(-1);
            return std::nullopt;
        }
        if (next_answer_ >= plan_.dl_answers.size()) throw DecodeFailure("replay: ran out of dl answers");
        u64 z = plan_.dl_answers[next_answer_++];
        answers_.push_back(static_cast<std::int64_t>(z));
        auto rel = *pa - tracker_.domain().constant(z);
        if constexpr (std::is_same_v<Domain, ModDomain>) {
            tracker_.record_linear(seq_ - 1, oracle::GateKind::Dl, rel, {a.id});
        }
        maybe_cut();
        return z;
    }

    Element challenge() override {
        require(chal_used_ < opts_.challenges, "challenge oracle exhausted");
        tick(false);
        int var = opts_.first_challenge_variable + static_cast<int>(chal_used_++);
        return Element{tracker_.push_wire(tracker_.domain().variable(static_cast<std::size_t>(var)))};
    }

    u64 ops_used() const override { return ops_; }
    u64 ops_budget() const override { return budget_; }
    void lift_budget(u64 extra) override { budget_ = (budget_ > UINT64_MAX - extra) ? UINT64_MAX : budget_ + extra; }

    const Tracker<Domain>& tracker() const { return tracker_; }
    bool finished() const { return next_directive_ >= plan_.directives.size() && next_answer_ >= plan_.dl_answers.size(); }
    const std::optional<QuadPolyModN>& cut_quadratic() const { return last_quadratic_; }
    // One entry per comparison gate: 0/1, or the dl answer (-1 when refused).
    const std::vector<std::int64_t>& answers() const { return answers_; }

private:
    bool log(bool v) {
        answers_.push_back(v);
        return v;
    }

    void charge() {
        if (ops_ >= budget_) throw BudgetExceeded("element-gate budget exhausted");
    }

    // Advances the gate sequence; returns whether this comparison is directed.
    bool tick(bool comparison) {
        u64 seq = seq_++;
        u64 ord = comparison ? ordinal_++ : UINT64_MAX;
        if (next_directive_ >= plan_.directives.size()) return false;
        const auto& d = plan_.directives[next_directive_];
        if (d.by == Directive::By::Sequence) {
            if (d.value != seq) return false;
            if (!comparison) throw DecodeFailure("replay: directive points at a gate that is not a comparison");
            return true;
        }
        return comparison && d.value == ord;
    }

    bool answer_linear(const typename Domain::Poly& rel, bool directed, oracle::GateKind kind,
                       std::vector<std::uint32_t> wires) {
        if (!directed) return tracker_.predicted(rel);
        if (tracker_.predicted(rel)) throw DecodeFailure("replay: directed comparison is not informative");
        if constexpr (std::is_same_v<Domain, ModDomain>) {
            if (rel.is_constant()) throw DecodeFailure("replay: directed comparison can never hold");
        }
        tracker_.record_linear(seq_ - 1, kind, rel, std::move(wires));
        consumed_directive();
        return true;
    }

    void consumed_directive() {
        ++next_directive_;
        maybe_cut();
    }

    void maybe_cut() {
        if (plan_.halt && (!plan_.directives.empty() || !plan_.dl_answers.empty()) && finished()) throw ReplayCut();
    }

    GroupInfo info_;
    SessionOptions opts_;
    u64 budget_;
    u64 ops_ = 0, seq_ = 0, ordinal_ = 0, ddh_used_ = 0, dl_used_ = 0, chal_used_ = 0;
    Tracker<Domain> tracker_;
    ReplayPlan plan_;
    std::size_t next_directive_ = 0, next_answer_ = 0;
    std::vector<Element> input_wires_;
    std::set<std::pair<std::uint32_t, std::uint32_t>> asked_;
    std::optional<QuadPolyModN> last_quadratic_;
    std::vector<std::int64_t> answers_;
};

}  // namespace genlab::tracker

namespace genlab::tracker {

template <class Domain>
struct ReplayOutcome {
    bool reached_cut = false;
    oracle::AlgorithmOutput output;  // meaningful when the game ran to completion
    Tracker<Domain> tracker;
    std::vector<std::int64_t> answers;
    std::optional<QuadPolyModN> quadratic;  // directed degree-2 ddh relation, if the cut was one
};

// Re-executes the game without the oracle. With a halting plan, a game that ends
// before its last directive is a decode failure.
template <class Domain>
ReplayOutcome<Domain> replay_without_oracle(const oracle::Game& game, GroupInfo info,
                                            const std::vector<InputSpec>& inputs, SessionOptions opts, Domain dom,
                                            ReplayPlan plan) {
    bool must_cut = plan.halt && (!plan.directives.empty() || !plan.dl_answers.empty());
    ReplaySession<Domain> session(info, inputs, opts, dom, std::move(plan));
    ReplayOutcome<Domain> out{false, {}, session.tracker(), {}, std::nullopt};
    try {
        out.output = game(session);
    } catch (const ReplayCut&) {
        out.reached_cut = true;
    }
    if (must_cut && !out.reached_cut) throw DecodeFailure("replay: game ended before the cut point");
    out.tracker = session.tracker();
    out.answers = session.answers();
    out.quadratic = session.cut_quadratic();
    return out;
}

}  // namespace genlab::tracker
