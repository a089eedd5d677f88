#include "genlab/oracle/session.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"

namespace genlab::oracle {

using algebra::add_mod;
using algebra::mul_mod;
using algebra::sub_mod;

GroupSpec GroupSpec::prime(u64 p) {
    require(algebra::is_prime_u64(p), "GroupSpec::prime: order is not prime");
    GroupSpec s;
    s.order = p;
    s.bit_length = algebra::ceil_log2(p);
    return s;
}

GroupSpec GroupSpec::composite(u64 n) {
    GroupSpec s;
    s.order = n;
    s.factorization = algebra::factor_integer(n);
    s.bit_length = algebra::ceil_log2(n);
    return s;
}

GroupSpec GroupSpec::hidden(u64 n, unsigned bits) {
    GroupSpec s;
    s.order = n;
    s.known_order = false;
    s.bit_length = bits;
    return s;
}

GroupInfo GroupSpec::public_info() const {
    GroupInfo g;
    g.known_order = known_order;
    g.order = known_order ? order : 0;
    g.bit_length = bit_length ? bit_length : algebra::ceil_log2(order);
    return g;
}

OracleSession::OracleSession(GroupSpec spec, std::vector<InputSpec> inputs, SessionOptions opts)
    : spec_(std::move(spec)), info_(spec_.public_info()), opts_(opts), budget_(opts.budget),
      challenge_rng_(derive_seed(opts.challenge_seed, "challenge")) {
    require(spec_.order >= 1, "OracleSession: order must be positive");
    if (spec_.known_order && !algebra::is_prime_u64(spec_.order) && spec_.order > 1)
        require(spec_.factorization.has_value(), "OracleSession: composite order needs its factorization");
    transcript_.nvars = opts.nvars;
    for (const auto& in : inputs) {
        Element e = new_wire(in.exponent % spec_.order);
        input_wires_.push_back(e);
        auto& r = push(GateKind::Input);
        r.output = e.id;
        r.variable = in.variable;
        if (in.variable == 0) r.answer = static_cast<std::int64_t>(in.exponent % spec_.order);
        ++transcript_.tallies.inputs;
    }
}

Element OracleSession::new_wire(std::optional<u64> exponent) {
    wires_.push_back(exponent);
    return Element{static_cast<std::uint32_t>(wires_.size() - 1)};
}

const std::optional<u64>& OracleSession::wire(Element e) const {
    require(e.id < wires_.size(), "unknown element wire");
    return wires_[e.id];
}

GateRecord& OracleSession::push(GateKind kind) {
    GateRecord r;
    r.seq = transcript_.records.size();
    r.kind = kind;
    transcript_.records.push_back(std::move(r));
    return transcript_.records.back();
}

void OracleSession::charge() {
    if (ops_used() >= budget_) throw BudgetExceeded("element-gate budget exhausted");
}

void OracleSession::lift_budget(u64 extra) {
    budget_ = (budget_ > UINT64_MAX - extra) ? UINT64_MAX : budget_ + extra;
}

Element OracleSession::label(u64 value) {
    require(spec_.known_order, "labeling gate is disabled in unknown-order sessions");
    charge();
    Element e = new_wire(value < spec_.order ? std::optional<u64>(value) : std::nullopt);
    auto& r = push(GateKind::Label);
    r.output = e.id;
    r.answer = static_cast<std::int64_t>(value);
    ++transcript_.tallies.labels;
    return e;
}

Element OracleSession::op(Element a, Element b, bool subtract) {
    const auto wa = wire(a);
    const auto wb = wire(b);
    charge();
    std::optional<u64> v;
    if (wa && wb) v = subtract ? sub_mod(*wa, *wb, spec_.order) : add_mod(*wa, *wb, spec_.order);
    Element e = new_wire(v);
    auto& r = push(GateKind::GroupOp);
    r.inputs = {a.id, b.id};
    r.sign = subtract;
    r.output = e.id;
    ++transcript_.tallies.group_ops;
    return e;
}

bool OracleSession::equal(Element a, Element b) {
    const auto wa = wire(a);
    const auto wb = wire(b);
    auto key = std::minmax(a.id, b.id);
    require(asked_.insert(key).second, "equality gate repeated on the same pair of wires");
    bool ans = wa && wb && *wa == *wb;
    auto& r = push(GateKind::Equality);
    r.inputs = {a.id, b.id};
    r.answer = ans;
    ++transcript_.tallies.equalities;
    return ans;
}

bool OracleSession::ddh(Element a, Element b, Element c) {
    require(opts_.ddh_enabled, "ddh oracle not enabled for this session");
    const auto wa = wire(a);
    const auto wb = wire(b);
    const auto wc = wire(c);
    if (transcript_.tallies.ddh >= opts_.ddh_budget) throw BudgetExceeded("ddh query budget exhausted");
    bool ans = wa && wb && wc && mul_mod(*wa, *wb, spec_.order) == *wc;
    auto& r = push(GateKind::Ddh);
    r.inputs = {a.id, b.id, c.id};
    r.answer = ans;
    ++transcript_.tallies.ddh;
    return ans;
}

std::optional<u64> OracleSession::dl(Element a) {
    require(opts_.dl_enabled, "dl oracle not enabled for this session");
    const auto wa = wire(a);
    auto& r = push(GateKind::Dl);
    r.inputs = {a.id};
    ++transcript_.tallies.dl;
    if (transcript_.tallies.dl > opts_.dl_budget) {
        transcript_.invalid = true;
        return std::nullopt;
    }
    if (!wa) return std::nullopt;
    r.answer = static_cast<std::int64_t>(*wa);
    return *wa;
}

Element OracleSession::challenge() {
    require(challenge_values_.size() < opts_.challenges, "challenge oracle exhausted");
    u64 k = challenge_values_.size();
    u64 x = k < opts_.preset_challenges.size() ? opts_.preset_challenges[k] % spec_.order
                                               : uniform_below(challenge_rng_, spec_.order);
    challenge_values_.push_back(x);
    Element e = new_wire(x);
    auto& r = push(GateKind::Chal);
    r.output = e.id;
    r.variable = opts_.first_challenge_variable + static_cast<int>(challenge_values_.size()) - 1;
    ++transcript_.tallies.chal;
    return e;
}

std::optional<u64> OracleSession::hidden_exponent(Element e) const { return wire(e); }

AlgorithmOutput run_algorithm(const GenericAlgorithm& alg, GroupApi& api, std::uint64_t seed) {
    Rng rng = make_rng(seed, "algorithm");
    try {
        return alg(api, rng);
    } catch (const BudgetExceeded&) {
        auto out = AlgorithmOutput::fail();
        out.truncated = true;
        return out;
    }
}

AlgorithmOutput play_live(const Game& game, OracleSession& session) {
    AlgorithmOutput out = game(session);
    session.transcript().output = out;
    session.transcript().truncated = session.transcript().truncated || out.truncated;
    return out;
}

}  // namespace genlab::oracle
