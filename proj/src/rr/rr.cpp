#include "genlab/rr/rr.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"
#include "genlab/oracle/session.hpp"

#include <set>

namespace genlab::rr {

using oracle::AlgorithmOutput;
using oracle::Element;
using oracle::GroupApi;

std::string label_hex(Label l) {
    static const char* digits = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 31; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(l & 15)];
        l >>= 4;
    }
    return s;
}

LabelSpace LabelSpace::standard(u64 order) {
    unsigned bits = algebra::ceil_log2(order) + 64;
    if (bits > 127) bits = 127;
    return of_size(order, Label(1) << bits);
}

LabelSpace LabelSpace::of_size(u64 order, Label size) {
    if (order < 1) throw ConfigError("label space: group order must be positive");
    if (size < order) throw ConfigError("label space: fewer labels than group elements");
    return {order, size};
}

CoupledStreams::CoupledStreams(u64 seed) : labels(make_rng(seed, "rr-labels")), exponents(make_rng(seed, "rr-exponents")) {}

RrOracle::RrOracle(LabelSpace space, const std::vector<u64>& input_exponents, u64 seed)
    : space_(space), streams_(seed) {
    for (u64 x : input_exponents) inputs_.push_back(assign(x % space_.order));
}

Label RrOracle::fresh_label() {
    for (;;) {
        Label l = uniform_below_u128(streams_.labels, space_.size);
        if (!backward_.count(l)) return l;
    }
}

Label RrOracle::assign(u64 x) {
    auto it = forward_.find(x);
    if (it != forward_.end()) return it->second;
    Label l = fresh_label();
    forward_[x] = l;
    backward_[l] = x;
    return l;
}

Label RrOracle::label(u64 x) {
    ++queries_;
    return assign(x % space_.order);
}

std::optional<u64> RrOracle::resolve(Label l) {
    auto it = backward_.find(l);
    if (it != backward_.end()) return it->second;
    Label m = forward_.size();
    Label unknown = space_.size - backward_.size();
    if (uniform_below_u128(streams_.exponents, unknown) < Label(space_.order) - m) {
        u64 x;
        do x = uniform_below(streams_.exponents, space_.order);
        while (forward_.count(x));
        forward_[x] = l;
        backward_[l] = x;
        return x;
    }
    backward_[l] = std::nullopt;
    return std::nullopt;
}

std::optional<Label> RrOracle::op(Label a, Label b, bool subtract) {
    ++queries_;
    auto xa = resolve(a);
    auto xb = resolve(b);
    if (!xa || !xb) return std::nullopt;
    u64 N = space_.order;
    return assign(subtract ? algebra::sub_mod(*xa, *xb, N) : algebra::add_mod(*xa, *xb, N));
}

namespace {

// B's side of the translation: a (wire, label) table maintained with equality gates.
class Translator : public RrApi {
public:
    Translator(GroupApi& api, LabelSpace space, unsigned retries, u64 seed)
        : api_(api), space_(space), retries_(retries), streams_(seed) {
        for (Element h : api_.inputs()) inputs_.push_back(find_label(h));
    }

    u64 order() const override { return space_.order; }
    Label space_size() const override { return space_.size; }
    const std::vector<Label>& inputs() const override { return inputs_; }
    u64 queries() const override { return queries_; }

    Label label(u64 x) override {
        ++queries_;
        return find_label(api_.label(x % space_.order));
    }

    std::optional<Label> op(Label a, Label b, bool subtract) override {
        ++queries_;
        auto ha = find_element(a);
        auto hb = find_element(b);
        if (!ha || !hb) return std::nullopt;
        return find_label(api_.op(*ha, *hb, subtract));
    }

    Label find_label(Element h) {
        for (const auto& e : table_)
            if (e.wire && api_.equal(h, *e.wire)) return e.label;
        Label l;
        do l = uniform_below_u128(streams_.labels, space_.size);
        while (by_label_.count(l));
        add(h, l);
        return l;
    }

    std::optional<Element> find_element(Label l) {
        auto it = by_label_.find(l);
        if (it != by_label_.end()) return table_[it->second].wire;
        if (retries_ == 0) throw UnfaithfulQuery("query on a label never handed out; use the general translation");
        Label m = valid_entries_;
        Label unknown = space_.size - table_.size();
        if (uniform_below_u128(streams_.exponents, unknown) < Label(space_.order) - m) {
            for (unsigned i = 0; i < retries_; ++i) {
                Element h = api_.label(uniform_below(streams_.exponents, space_.order));
                bool seen = false;
                for (const auto& e : table_)
                    if (e.wire && api_.equal(h, *e.wire)) {
                        seen = true;
                        break;
                    }
                if (!seen) {
                    add(h, l);
                    return h;
                }
            }
        }
        add(std::nullopt, l);
        return std::nullopt;
    }

private:
    struct Entry {
        std::optional<Element> wire;
        Label label;
    };

    void add(std::optional<Element> h, Label l) {
        by_label_[l] = table_.size();
        table_.push_back({h, l});
        valid_entries_ += h.has_value();
    }

    GroupApi& api_;
    LabelSpace space_;
    unsigned retries_;
    CoupledStreams streams_;
    std::vector<Entry> table_;
    std::map<Label, std::size_t> by_label_;
    std::size_t valid_entries_ = 0;
    std::vector<Label> inputs_;
    u64 queries_ = 0;
};

AlgorithmOutput translated_output(GroupApi& api, Translator& B, const RrOutput& out) {
    AlgorithmOutput res;
    res.failed = out.failed;
    res.values = out.values;
    for (const auto& l : out.labels) {
        std::optional<Element> h = l ? B.find_element(*l) : std::nullopt;
        res.elements.push_back(h ? *h : api.label(B.order()));  // ⊥ wire
    }
    return res;
}

}  // namespace

oracle::GenericAlgorithm translate(RrAlgorithm alg, LabelSpace space, unsigned retries, u64 seed) {
    return [alg = std::move(alg), space, retries, seed](GroupApi& api, Rng& rng) {
        Translator B(api, space, retries, seed);
        RrOutput out = alg(B, rng);
        return translated_output(api, B, out);
    };
}

oracle::GenericAlgorithm translate_faithful(RrAlgorithm alg, LabelSpace space, u64 seed) {
    return translate(std::move(alg), space, 0, seed);
}

oracle::GenericAlgorithm translate_general(RrAlgorithm alg, LabelSpace space, unsigned retries, u64 seed) {
    require(retries >= 1, "translate_general: needs at least one retry");
    return translate(std::move(alg), space, retries, seed);
}

RunOutcome run_native(const RrAlgorithm& alg, LabelSpace space, const std::vector<u64>& inputs, u64 seed) {
    RrOracle oracle(space, inputs, seed);
    Rng rng = make_rng(seed, "algorithm");
    RrOutput out = alg(oracle, rng);
    RunOutcome r;
    r.failed = out.failed;
    r.values = out.values;
    for (const auto& l : out.labels) r.exponents.push_back(l ? oracle.resolve(*l) : std::nullopt);
    r.queries = oracle.queries();
    return r;
}

RunOutcome run_translated(const RrAlgorithm& alg, LabelSpace space, const std::vector<u64>& inputs, u64 seed,
                          unsigned retries) {
    auto spec = algebra::is_prime_u64(space.order) ? oracle::GroupSpec::prime(space.order)
                                                   : oracle::GroupSpec::composite(space.order);
    std::vector<oracle::InputSpec> in;
    for (u64 x : inputs) in.push_back({x % space.order, 0});
    oracle::OracleSession session(spec, in);
    Translator B(session, space, retries, seed);
    Rng rng = make_rng(seed, "algorithm");
    RrOutput out = alg(B, rng);
    AlgorithmOutput res = translated_output(session, B, out);
    RunOutcome r;
    r.failed = res.failed;
    r.values = res.values;
    for (Element e : res.elements) r.exponents.push_back(session.hidden_exponent(e));
    r.queries = B.queries();
    r.element_gates = session.ops_used();
    return r;
}

RrAlgorithm rr_bsgs(u64 T) {
    return [T](RrApi& api, Rng&) -> RrOutput {
        u64 s = T / 2;
        if (s == 0) return RrOutput::fail();
        std::map<Label, u64> babies;
        for (u64 j = 0; j < s; ++j) babies.emplace(api.label(j), j);
        Label G = api.label(s);
        std::optional<Label> y = api.inputs().at(1);
        for (u64 k = 0; k < s && y; ++k) {
            auto it = babies.find(*y);
            if (it != babies.end()) return {false, {BigInt(k * s + it->second)}, {}};
            if (k + 1 < s) y = api.op(*y, G, true);
        }
        return RrOutput::fail();
    };
}

RrAlgorithm unfaithful_probe(std::size_t labels) {
    return [labels](RrApi& api, Rng& rng) -> RrOutput {
        std::set<Label> seen(api.inputs().begin(), api.inputs().end());
        for (std::size_t i = 0; i < labels; ++i) seen.insert(api.label(uniform_below(rng, api.order())));
        if (Label(seen.size()) >= api.space_size()) return RrOutput::fail();
        Label probe;
        do probe = uniform_below_u128(rng, api.space_size());
        while (seen.count(probe));
        return {false, {}, {api.op(probe, api.inputs().at(0), false)}};
    };
}

}  // namespace genlab::rr
