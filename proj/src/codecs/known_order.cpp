#include "genlab/codecs/codec.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"
#include "genlab/tracker/replay.hpp"
#include "genlab/tracker/tracker.hpp"

#include <algorithm>

namespace genlab::codecs {

using oracle::AlgorithmOutput;
using oracle::Element;
using oracle::GroupApi;
using oracle::InputSpec;
using oracle::OracleSession;
using oracle::SessionOptions;
using tracker::Directive;
using tracker::ModDomain;
using tracker::ReplayPlan;

TrialSeeds trial_seeds(std::uint64_t seed, std::uint64_t trial) {
    return {derive_seed(seed, "instance", trial), derive_seed(seed, "algorithm", trial),
            derive_seed(seed, "shared", trial)};
}

Decoded Codec::decode(const Encoding& enc, const TrialSeeds& seeds) const {
    if (!enc.bottom) {
        try {
            return {decode_payload(enc, seeds), false};
        } catch (const DecodeFailure&) {
        } catch (const NotInformative&) {
        }
    }
    Rng rng = make_rng(seeds.shared, "codec-fallback");
    return {sample_message(rng), true};
}

namespace {

class ChallengeRecorder : public oracle::ForwardingApi {
public:
    using ForwardingApi::ForwardingApi;
    Element challenge() override {
        Element e = inner_.challenge();
        seen.push_back(e);
        return e;
    }
    std::vector<Element> seen;
};

u64 to_u64(const BigInt& v) { return static_cast<u64>(v); }

// Solves rel = 0 for variable `var` given values for all other variables.
u64 solve_for(const algebra::LinPolyModN& rel, std::size_t var, const std::vector<u64>& values) {
    u64 p = rel.modulus();
    u64 a = rel[var];
    if (a == 0) throw DecodeFailure("decode: relation does not involve the unknown");
    u64 rest = rel.constant_term();
    for (std::size_t i = 1; i <= rel.nvars(); ++i)
        if (i != var) rest = algebra::add_mod(rest, algebra::mul_mod(rel[i], values[i - 1] % p, p), p);
    return algebra::mul_mod(algebra::neg_mod(rest, p), algebra::inv_mod_checked(a, p), p);
}

std::vector<u64> quadratic_roots(const tracker::QuadPolyModN& q, std::size_t keep, const std::vector<u64>& values) {
    auto c = q.restrict_to(keep, values);
    auto roots = algebra::roots_quadratic_mod(c[0], c[1], c[2], q.modulus());
    if (!roots) return {};
    return *roots;
}

template <class Poly>
const tracker::CollisionEvent<Poly>* first_informative(const std::vector<tracker::CollisionEvent<Poly>>& events) {
    auto ev = tracker::informative_events(events, 1);
    return ev.empty() ? nullptr : ev[0];
}

class KnownOrderCodec : public Codec {
public:
    KnownOrderCodec(CodecKind kind, u64 p, std::size_t nvars, std::size_t inputs, GenericAlgorithm alg,
                    std::string name, u64 T)
        : Codec(kind, std::move(name), T), p_(p), nvars_(nvars), inputs_(inputs), alg_(std::move(alg)) {
        require(algebra::is_prime_u64(p), "codec: group order must be prime");
    }

    std::string group_label() const override { return std::to_string(p_); }

    LiveRun run_live(const Message& msg, const TrialSeeds& seeds) const override {
        OracleSession s(oracle::GroupSpec::prime(p_), live_inputs(msg), options(&msg, seeds));
        LiveRun run;
        run.output = oracle::play_live(game(seeds), s);
        run.success = succeeded(s, run.output, msg);
        run.transcript = s.transcript();
        return run;
    }

protected:
    virtual std::vector<InputSpec> live_inputs(const Message& msg) const = 0;
    virtual void check(GroupApi& api, const AlgorithmOutput& out, const std::vector<Element>& chal) const = 0;
    virtual bool succeeded(const OracleSession& s, const AlgorithmOutput& out, const Message& msg) const = 0;

    std::vector<InputSpec> public_inputs() const {
        auto in = live_inputs(Message(nvars_, 0));
        for (auto& i : in)
            if (i.variable > 0) i.exponent = 0;
        return in;
    }

    SessionOptions options(const Message* msg, const TrialSeeds& seeds) const {
        SessionOptions o;
        o.budget = budget();
        o.nvars = nvars_;
        o.ddh_enabled = ddh_budget_ > 0;
        o.ddh_budget = ddh_budget_;
        o.dl_enabled = dl_budget_ > 0;
        o.dl_budget = dl_budget_;
        o.challenges = challenges_;
        if (msg && challenges_ > 0) {
            o.challenge_seed = seeds.instance;
            for (std::size_t i = 0; i < challenges_; ++i) o.preset_challenges.push_back(to_u64((*msg)[i]));
        }
        return o;
    }

    oracle::Game game(const TrialSeeds& seeds) const {
        return [this, seed = seeds.algorithm](GroupApi& api) {
            ChallengeRecorder rec(api);
            AlgorithmOutput out = oracle::run_algorithm(alg_, rec, seed);
            if (out.failed) return out;
            api.lift_budget(check_ops_);
            check(api, out, rec.seen);
            return out;
        };
    }

    tracker::Tracker<ModDomain> live_tracker(const LiveRun& run) const {
        return tracker::track_transcript(run.transcript, ModDomain{p_, nvars_});
    }

    tracker::ReplayOutcome<ModDomain> replay(ReplayPlan plan, const TrialSeeds& seeds) const {
        return tracker::replay_without_oracle(game(seeds), oracle::GroupSpec::prime(p_).public_info(), public_inputs(),
                                              options(nullptr, seeds), ModDomain{p_, nvars_}, std::move(plan));
    }

    // Bound on comparison ordinals: equality pairs over all wires plus ddh and dl queries.
    BigInt ordinal_bound() const {
        u64 wires = inputs_ + challenges_ + budget() + check_ops_;
        return binomial(wires, 2) + ddh_budget_ + dl_budget_;
    }

    u64 checked_ordinal(u64 ordinal) const {
        require(BigInt(ordinal) < ordinal_bound(), "codec: comparison ordinal exceeds the counted bound");
        return ordinal;
    }

    void check_value(GroupApi& api, const BigInt& z, Element target) const {
        if (z < 0 || z >= p_) return;
        api.equal(api.label(to_u64(z)), target);
    }

    Message uniform(Rng& rng, std::size_t count) const {
        Message m;
        for (std::size_t i = 0; i < count; ++i) m.push_back(BigInt(uniform_below(rng, p_)));
        return m;
    }

    BigInt p_power(std::size_t k) const {
        BigInt r = 1;
        for (std::size_t i = 0; i < k; ++i) r *= p_;
        return r;
    }

    u64 p_;
    std::size_t nvars_;
    std::size_t inputs_;
    GenericAlgorithm alg_;
    u64 check_ops_ = 0;
    u64 ddh_budget_ = 0;
    u64 dl_budget_ = 0;
    u64 challenges_ = 0;
};

// Digits: (ordinal of the first informative equality).
class DlCodec : public KnownOrderCodec {
public:
    DlCodec(CodecKind kind, u64 p, u64 T, u64 ddh, GenericAlgorithm alg, std::string name)
        : KnownOrderCodec(kind, p, 1, 2, std::move(alg), std::move(name), T) {
        check_ops_ = 1;
        ddh_budget_ = ddh;
    }

    BigInt message_space() const override { return p_; }
    CodeSpace space() const override {
        if (kind() == CodecKind::GapDl) return CodeSpace({ordinal_bound(), 2});
        return CodeSpace({ordinal_bound()});
    }
    Message sample_message(Rng& rng) const override { return uniform(rng, 1); }

    Encoding encode(const LiveRun& run, const Message& msg, const TrialSeeds&) const override {
        auto tr = live_tracker(run);
        const auto* ev = first_informative(tr.events());
        if (!ev) return Encoding::none(kind());
        u64 o = checked_ordinal(ev->ordinal);
        if (kind() == CodecKind::Dl) return Encoding::of(kind(), {o});
        if (ev->relation) return Encoding::of(kind(), {o, 0});
        auto roots = quadratic_roots(*ev->quadratic, 1, {0});
        auto it = std::find(roots.begin(), roots.end(), to_u64(msg[0]));
        if (it == roots.end()) return Encoding::none(kind());
        return Encoding::of(kind(), {o, BigInt(it - roots.begin())});
    }

    Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const override {
        auto out = replay({{Directive::ordinal(to_u64(enc.digits[0]))}, {}, true}, seeds);
        if (out.quadratic) {
            auto roots = quadratic_roots(*out.quadratic, 1, {0});
            std::size_t pick = enc.digits.size() > 1 ? to_u64(enc.digits[1]) : 0;
            if (pick >= roots.size()) throw DecodeFailure("decode: root index out of range");
            return {BigInt(roots[pick])};
        }
        return {BigInt(solve_for(*out.tracker.events().back().relation, 1, {0}))};
    }

protected:
    std::vector<InputSpec> live_inputs(const Message& msg) const override {
        return {{1, 0}, {to_u64(msg[0]) % p_, 1}};
    }
    void check(GroupApi& api, const AlgorithmOutput& out, const std::vector<Element>&) const override {
        if (!out.values.empty()) check_value(api, out.values[0], api.inputs()[1]);
    }
    bool succeeded(const OracleSession&, const AlgorithmOutput& out, const Message& msg) const override {
        return !out.failed && !out.values.empty() && out.values[0] == msg[0];
    }
};

// Digits: (rank of the m-subset of informative ordinals).
class MdlCodec : public KnownOrderCodec {
public:
    MdlCodec(u64 p, std::size_t m, u64 T, GenericAlgorithm alg, std::string name)
        : KnownOrderCodec(CodecKind::Mdl, p, m, m + 1, std::move(alg), std::move(name), T), m_(m) {
        check_ops_ = m;
    }

    BigInt message_space() const override { return p_power(m_); }
    CodeSpace space() const override {
        return CodeSpace({binomial(static_cast<u64>(ordinal_bound()), m_)});
    }
    Message sample_message(Rng& rng) const override { return uniform(rng, m_); }

    Encoding encode(const LiveRun& run, const Message&, const TrialSeeds&) const override {
        auto tr = live_tracker(run);
        auto evs = tracker::informative_events(tr.events(), m_);
        if (evs.size() < m_) return Encoding::none(kind());
        std::vector<u64> ords;
        for (const auto* e : evs) ords.push_back(checked_ordinal(e->ordinal));
        return Encoding::of(kind(), {subset_rank(ords)});
    }

    Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const override {
        ReplayPlan plan;
        for (u64 o : subset_unrank(enc.digits[0], m_)) plan.directives.push_back(Directive::ordinal(o));
        auto out = replay(std::move(plan), seeds);
        Message msg;
        for (u64 v : tracker::solve_mdl(out.tracker.zero_set(), m_, p_)) msg.push_back(BigInt(v));
        return msg;
    }

protected:
    std::vector<InputSpec> live_inputs(const Message& msg) const override {
        std::vector<InputSpec> in{{1, 0}};
        for (std::size_t i = 0; i < m_; ++i) in.push_back({to_u64(msg[i]) % p_, static_cast<int>(i + 1)});
        return in;
    }
    void check(GroupApi& api, const AlgorithmOutput& out, const std::vector<Element>&) const override {
        for (std::size_t i = 0; i < m_ && i < out.values.size(); ++i) check_value(api, out.values[i], api.inputs()[i + 1]);
    }
    bool succeeded(const OracleSession&, const AlgorithmOutput& out, const Message& msg) const override {
        if (out.failed || out.values.size() < m_) return false;
        for (std::size_t i = 0; i < m_; ++i)
            if (out.values[i] != msg[i]) return false;
        return true;
    }

private:
    std::size_t m_;
};

// Digits: (ordinal, revealed variable: 0 reveals y / 1 reveals x, revealed value, root index).
class GapCdhCodec : public KnownOrderCodec {
public:
    GapCdhCodec(u64 p, u64 T, u64 ddh, GenericAlgorithm alg, std::string name)
        : KnownOrderCodec(CodecKind::GapCdh, p, 2, 3, std::move(alg), std::move(name), T) {
        ddh_budget_ = ddh + 1;
    }

    BigInt message_space() const override { return p_power(2); }
    CodeSpace space() const override { return CodeSpace({ordinal_bound(), 2, p_, 2}); }
    Message sample_message(Rng& rng) const override { return uniform(rng, 2); }

    Encoding encode(const LiveRun& run, const Message& msg, const TrialSeeds&) const override {
        auto tr = live_tracker(run);
        const auto* ev = first_informative(tr.events());
        if (!ev) return Encoding::none(kind());
        u64 o = checked_ordinal(ev->ordinal);
        u64 x = to_u64(msg[0]), y = to_u64(msg[1]);
        if (ev->relation) {
            if ((*ev->relation)[1] != 0) return Encoding::of(kind(), {o, 0, y, 0});
            return Encoding::of(kind(), {o, 1, x, 0});
        }
        for (int which = 0; which < 2; ++which) {
            auto roots = which == 0 ? quadratic_roots(*ev->quadratic, 1, {0, y}) : quadratic_roots(*ev->quadratic, 2, {x, 0});
            u64 target = which == 0 ? x : y;
            auto it = std::find(roots.begin(), roots.end(), target);
            if (it != roots.end()) return Encoding::of(kind(), {o, which, which == 0 ? y : x, BigInt(it - roots.begin())});
        }
        return Encoding::none(kind());
    }

    Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const override {
        auto out = replay({{Directive::ordinal(to_u64(enc.digits[0]))}, {}, true}, seeds);
        bool reveal_x = enc.digits[1] == 1;
        u64 known = to_u64(enc.digits[2]);
        std::size_t unknown = reveal_x ? 2 : 1;
        std::vector<u64> vals = reveal_x ? std::vector<u64>{known, 0} : std::vector<u64>{0, known};
        u64 solved;
        if (out.quadratic) {
            auto roots = quadratic_roots(*out.quadratic, unknown, vals);
            std::size_t pick = to_u64(enc.digits[3]);
            if (pick >= roots.size()) throw DecodeFailure("decode: root index out of range");
            solved = roots[pick];
        } else {
            solved = solve_for(*out.tracker.events().back().relation, unknown, vals);
        }
        return reveal_x ? Message{known, solved} : Message{solved, known};
    }

protected:
    std::vector<InputSpec> live_inputs(const Message& msg) const override {
        return {{1, 0}, {to_u64(msg[0]) % p_, 1}, {to_u64(msg[1]) % p_, 2}};
    }
    void check(GroupApi& api, const AlgorithmOutput& out, const std::vector<Element>&) const override {
        if (!out.elements.empty()) api.ddh(api.inputs()[1], api.inputs()[2], out.elements[0]);
    }
    bool succeeded(const OracleSession& s, const AlgorithmOutput& out, const Message& msg) const override {
        if (out.failed || out.elements.empty()) return false;
        auto z = s.hidden_exponent(out.elements[0]);
        return z && *z == algebra::mul_mod(to_u64(msg[0]), to_u64(msg[1]), p_);
    }
};

// Digits: (rank of the n equality ordinals, q dl answers, m - n revealed values).
class OmdlCodec : public KnownOrderCodec {
public:
    OmdlCodec(u64 p, std::size_t q, std::size_t n, std::size_t m, u64 T, GenericAlgorithm alg, std::string name)
        : KnownOrderCodec(CodecKind::Omdl, p, q + m, 1, std::move(alg), std::move(name), T), q_(q), n_(n), m_(m) {
        require(n <= m, "omdl codec: n must not exceed m");
        check_ops_ = q + n;
        dl_budget_ = q;
        challenges_ = q + m;
    }

    BigInt message_space() const override { return p_power(q_ + m_); }
    CodeSpace space() const override {
        std::vector<BigInt> r{binomial(static_cast<u64>(ordinal_bound()), n_)};
        for (std::size_t i = 0; i < q_ + m_ - n_; ++i) r.push_back(p_);
        return CodeSpace(std::move(r));
    }
    Message sample_message(Rng& rng) const override { return uniform(rng, q_ + m_); }

    Encoding encode(const LiveRun& run, const Message& msg, const TrialSeeds&) const override {
        auto tr = live_tracker(run);
        auto evs = tracker::informative_events(tr.events(), n_ + q_);
        if (evs.size() < n_ + q_) return Encoding::none(kind());
        std::vector<u64> ords;
        tracker::ZeroSetModP zs(p_, q_ + m_);
        std::size_t dls = 0;
        for (const auto* e : evs) {
            if (e->kind == oracle::GateKind::Dl) {
                ++dls;
            } else {
                ords.push_back(checked_ordinal(e->ordinal));
            }
            zs.insert(*e->relation);
        }
        if (dls != q_ || ords.size() != n_) return Encoding::none(kind());
        std::vector<BigInt> digits{subset_rank(ords)};
        std::size_t answered = 0;
        for (const auto& r : run.transcript.records) {
            if (r.kind != oracle::GateKind::Dl || !r.answer) continue;
            if (answered++ < q_) digits.push_back(BigInt(*r.answer));
        }
        if (answered != q_) return Encoding::none(kind());
        for (std::size_t v : tracker::reveal_indices(zs, q_ + m_)) digits.push_back(msg[v - 1]);
        return Encoding::of(kind(), std::move(digits));
    }

    Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const override {
        ReplayPlan plan;
        for (u64 o : subset_unrank(enc.digits[0], n_)) plan.directives.push_back(Directive::ordinal(o));
        for (std::size_t i = 0; i < q_; ++i) plan.dl_answers.push_back(to_u64(enc.digits[1 + i]));
        auto out = replay(std::move(plan), seeds);
        const auto& zs = out.tracker.zero_set();
        if (zs.rank() != n_ + q_) throw DecodeFailure("decode: replay produced the wrong number of relations");
        auto eqs = zs.relations();
        std::size_t k = 1 + q_;
        std::size_t t = q_ + m_;
        for (std::size_t v : tracker::reveal_indices(zs, t)) {
            auto rel = algebra::LinPolyModN::variable(p_, t, v) -
                       algebra::LinPolyModN::constant(p_, t, to_u64(enc.digits.at(k++)));
            eqs.push_back(rel);
        }
        Message msg;
        for (u64 v : algebra::solve_square_system_mod(eqs, p_)) msg.push_back(BigInt(v));
        return msg;
    }

protected:
    std::vector<InputSpec> live_inputs(const Message&) const override { return {{1, 0}}; }
    void check(GroupApi& api, const AlgorithmOutput& out, const std::vector<Element>& chal) const override {
        for (std::size_t i = 0; i < q_ + n_ && i < out.values.size() && i < chal.size(); ++i)
            check_value(api, out.values[i], chal[i]);
    }
    bool succeeded(const OracleSession& s, const AlgorithmOutput& out, const Message& msg) const override {
        if (out.failed || s.transcript().invalid || out.values.size() < q_ + n_) return false;
        for (std::size_t i = 0; i < q_ + n_; ++i)
            if (out.values[i] != msg[i]) return false;
        return true;
    }

private:
    std::size_t q_, n_, m_;
};

}  // namespace

std::unique_ptr<Codec> make_dl_codec(u64 p, u64 T, GenericAlgorithm alg, std::string name) {
    return std::make_unique<DlCodec>(CodecKind::Dl, p, T, 0, std::move(alg), std::move(name));
}

std::unique_ptr<Codec> make_mdl_codec(u64 p, std::size_t m, u64 T, GenericAlgorithm alg, std::string name) {
    return std::make_unique<MdlCodec>(p, m, T, std::move(alg), std::move(name));
}

std::unique_ptr<Codec> make_gap_dl_codec(u64 p, u64 T, u64 ddh_budget, GenericAlgorithm alg, std::string name) {
    return std::make_unique<DlCodec>(CodecKind::GapDl, p, T, ddh_budget, std::move(alg), std::move(name));
}

std::unique_ptr<Codec> make_gap_cdh_codec(u64 p, u64 T, u64 ddh_budget, GenericAlgorithm alg, std::string name) {
    return std::make_unique<GapCdhCodec>(p, T, ddh_budget, std::move(alg), std::move(name));
}

std::unique_ptr<Codec> make_omdl_codec(u64 p, std::size_t q, std::size_t n, std::size_t m, u64 T, GenericAlgorithm alg,
                                       std::string name) {
    return std::make_unique<OmdlCodec>(p, q, n, m, T, std::move(alg), std::move(name));
}

}  // namespace genlab::codecs
