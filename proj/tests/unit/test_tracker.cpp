#include "doctest.h"

#include "genlab/algorithms/algorithms.hpp"
#include "genlab/common/error.hpp"
#include "genlab/oracle/session.hpp"
#include "genlab/tracker/replay.hpp"
#include "genlab/tracker/stats.hpp"
#include "genlab/tracker/tracker.hpp"

#include <cmath>

using namespace genlab;
using namespace genlab::tracker;
using oracle::AlgorithmOutput;
using oracle::Game;
using oracle::GroupApi;
using oracle::GroupSpec;
using oracle::InputSpec;
using oracle::OracleSession;
using oracle::SessionOptions;

namespace {

LinPolyModN P(u64 p, std::vector<long long> c) {
    std::vector<u64> r;
    for (auto v : c) r.push_back(algebra::reduce_signed(v, p));
    return LinPolyModN(p, r);
}

Game game_of(oracle::GenericAlgorithm alg, std::uint64_t seed) {
    return [alg = std::move(alg), seed](GroupApi& api) { return oracle::run_algorithm(alg, api, seed); };
}

std::vector<std::int64_t> live_answers(const oracle::Transcript& t) {
    std::vector<std::int64_t> out;
    for (const auto& r : t.records) {
        if (!oracle::is_comparison(r.kind)) continue;
        out.push_back(r.answer.value_or(-1));
    }
    return out;
}

template <class Domain>
ReplayPlan full_plan(const Tracker<Domain>& tr, const oracle::Transcript& t) {
    ReplayPlan plan;
    plan.halt = false;
    for (const auto& e : tr.events())
        if (e.cls == CollisionClass::Informative && e.kind != oracle::GateKind::Dl)
            plan.directives.push_back(Directive::ordinal(e.ordinal));
    for (const auto& r : t.records)
        if (r.kind == oracle::GateKind::Dl && r.answer) plan.dl_answers.push_back(static_cast<u64>(*r.answer));
    return plan;
}

// Live run, offline tracking, full-information replay; all three must agree.
template <class Domain>
void check_equivalence(const Game& game, const GroupSpec& spec, const std::vector<InputSpec>& inputs,
                       SessionOptions opts, Domain dom) {
    OracleSession live(spec, inputs, opts);
    auto out = oracle::play_live(game, live);
    auto tr = track_transcript(live.transcript(), dom);
    auto rep = replay_without_oracle(game, spec.public_info(), inputs, opts, dom, full_plan(tr, live.transcript()));
    CHECK(rep.tracker.polys() == tr.polys());
    CHECK(rep.answers == live_answers(live.transcript()));
    CHECK(rep.output.failed == out.failed);
    CHECK(rep.output.values == out.values);
    std::size_t linear_informative = 0;
    for (const auto& e : tr.events()) linear_informative += e.cls == CollisionClass::Informative && e.relation.has_value();
    CHECK(tr.zero_set().rank() == linear_informative);
}

}  // namespace

TEST_CASE("track_gate appends the symbolic value of each wire") {
    Tracker<ModDomain> tr(ModDomain{11, 1});
    GateRecord in;
    in.kind = GateKind::Input;
    in.variable = 1;
    tr.track(in, 0);
    GateRecord lab;
    lab.kind = GateKind::Label;
    lab.answer = 7;
    tr.track(lab, 1);
    CHECK(*tr.poly(1) == P(11, {7, 0}));
    GateRecord three;
    three.kind = GateKind::Label;
    three.answer = 3;
    tr.track(three, 2);
    GateRecord op;
    op.kind = GateKind::GroupOp;
    op.inputs = {0, 2};
    tr.track(op, 3);
    CHECK(*tr.poly(3) == P(11, {3, 1}));
    op.inputs = {0, 0};
    op.sign = true;
    tr.track(op, 4);
    CHECK(tr.poly(4)->is_zero());
    GateRecord bad;
    bad.kind = GateKind::GroupOp;
    bad.inputs = {0, 99};
    CHECK_THROWS_AS(tr.track(bad, 5), ContractViolation);
    GateRecord big;
    big.kind = GateKind::Label;
    big.answer = 12;
    tr.track(big, 5);
    CHECK_FALSE(tr.poly(5).has_value());
}

TEST_CASE("collision classes") {
    Tracker<ModDomain> tr(ModDomain{11, 1});
    CHECK(tr.classify(P(11, {3, 1}) - P(11, {3, 1})) == CollisionClass::Trivial);
    CHECK(tr.classify(P(11, {-7, 1})) == CollisionClass::Informative);
    CHECK(tr.zero_set().rank() == 1);
    CHECK(tr.classify(P(11, {-14, 2})) == CollisionClass::Predictable);
    CHECK(tr.zero_set().rank() == 1);

    Tracker<IntDomain> zi(IntDomain{0});
    CHECK(zi.classify(LinPolyInt::constant(0, 15)) == CollisionClass::Informative);
    CHECK(zi.classify(LinPolyInt::constant(0, 45)) == CollisionClass::Predictable);
    CHECK(zi.classify(LinPolyInt::constant(0, 10)) == CollisionClass::Informative);
    CHECK(zi.zero_set().basis().rows()[0][0] == 5);

    ZeroSetModP composite(15, 1);
    CHECK(composite.identity_only());
    CHECK(composite.contains(LinPolyModN::zero(15, 1)));
    composite.insert(P(15, {-4, 1}));
    CHECK_FALSE(composite.contains(P(15, {-4, 1})));
}

TEST_CASE("solve_mdl and reveal_indices") {
    ZeroSetModP zs(7, 2);
    zs.insert(P(7, {-3, 1, 1}));
    zs.insert(P(7, {-1, 1, -1}));
    CHECK(solve_mdl(zs, 2, 7) == std::vector<u64>{2, 1});
    ZeroSetModP one(5, 1);
    one.insert(P(5, {0, 1}));
    CHECK(solve_mdl(one, 1, 5) == std::vector<u64>{0});
    ZeroSetModP diag(11, 2);
    diag.insert(P(11, {-7, 1, 0}));
    CHECK_THROWS_AS(solve_mdl(diag, 2, 11), NotInformative);
    diag.insert(P(11, {-3, 0, 1}));
    CHECK(solve_mdl(diag, 2, 11) == std::vector<u64>{7, 3});

    ZeroSetModP r1(11, 2);
    r1.insert(P(11, {-5, 1, 1}));
    CHECK(reveal_indices(r1, 2) == std::vector<std::size_t>{2});
    ZeroSetModP r2(11, 3);
    r2.insert(P(11, {-7, 1, 0, 0}));
    r2.insert(P(11, {-3, 0, 1, 0}));
    CHECK(reveal_indices(r2, 3) == std::vector<std::size_t>{3});
    ZeroSetModP r3(7, 2);
    r3.insert(P(7, {0, 1, 1}));
    r3.insert(P(7, {0, 1, -1}));
    CHECK(reveal_indices(r3, 2).empty());
}

TEST_CASE("revealed variables leave the remaining system full rank") {
    Rng rng(12);
    for (int it = 0; it < 200; ++it) {
        u64 p = 101;
        std::size_t b = 2 + uniform_below(rng, 3);
        std::size_t a = uniform_below(rng, b);
        ZeroSetModP zs(p, b);
        while (zs.rank() < a) {
            std::vector<u64> c(b + 1);
            for (auto& v : c) v = uniform_below(rng, p);
            c[0] = 0;
            LinPolyModN rel(p, c);
            if (!zs.contains(rel)) zs.insert(rel);
        }
        auto rev = reveal_indices(zs, b);
        CHECK(rev.size() == b - a);
        // fix revealed variables: the relation rows restricted to the other columns keep rank a
        std::vector<std::size_t> keep;
        for (std::size_t c = 1; c <= b; ++c)
            if (std::find(rev.begin(), rev.end(), c) == rev.end()) keep.push_back(c);
        algebra::SpanBasisModP sub(p, keep.size());
        for (const auto& r : zs.relations()) {
            std::vector<u64> c{0};
            for (std::size_t k : keep) c.push_back(r[k]);
            sub.insert(LinPolyModN(p, c));
        }
        CHECK(sub.rank() == a);
    }
}

TEST_CASE("replay to the first informative collision reproduces the live prefix") {
    std::vector<InputSpec> inputs{{1, 0}, {7, 1}};
    SessionOptions opts;
    opts.nvars = 1;
    ModDomain dom{11, 1};
    Game game = game_of(algorithms::bsgs_dl(8), 4);
    OracleSession live(GroupSpec::prime(11), inputs, opts);
    oracle::play_live(game, live);
    auto tr = track_transcript(live.transcript(), dom);
    auto first = informative_events(tr.events(), 1);
    REQUIRE(first.size() == 1);
    ReplayPlan plan;
    plan.directives = {Directive::ordinal(first[0]->ordinal)};
    auto rep = replay_without_oracle(game, live.info(), inputs, opts, dom, plan);
    CHECK(rep.reached_cut);
    const auto& rp = rep.tracker.polys();
    REQUIRE(rp.size() <= tr.polys().size());
    for (std::size_t i = 0; i < rp.size(); ++i) CHECK(rp[i] == tr.polys()[i]);
    REQUIRE(rep.tracker.zero_set().rank() == 1);
    CHECK(*rep.tracker.events().back().relation == *first[0]->relation);
    CHECK(rep.tracker.events().back().record == first[0]->record);
}

TEST_CASE("replay without directives on a collision-free algorithm") {
    auto alg = [](GroupApi& api, Rng&) {
        auto a = api.label(2);
        auto b = api.label(3);
        api.equal(a, b);
        api.op(a, b, false);
        return AlgorithmOutput::value(0);
    };
    std::vector<InputSpec> inputs{{1, 0}, {5, 1}};
    SessionOptions opts;
    opts.nvars = 1;
    auto rep = replay_without_oracle(game_of(alg, 0), GroupSpec::prime(11).public_info(), inputs, opts, ModDomain{11, 1},
                                     ReplayPlan{});
    CHECK(rep.tracker.polys().size() == 5);
    CHECK(rep.tracker.zero_set().rank() == 0);
    CHECK_FALSE(rep.reached_cut);

    ReplayPlan bad;
    bad.directives = {Directive::sequence(2)};  // the first labeling gate
    CHECK_THROWS_AS(replay_without_oracle(game_of(alg, 0), GroupSpec::prime(11).public_info(), inputs, opts,
                                          ModDomain{11, 1}, bad),
                    DecodeFailure);
    ReplayPlan not_informative;
    not_informative.directives = {Directive::ordinal(0)};  // 2 vs 3: never a collision
    CHECK_THROWS_AS(replay_without_oracle(game_of(alg, 0), GroupSpec::prime(11).public_info(), inputs, opts,
                                          ModDomain{11, 1}, not_informative),
                    DecodeFailure);
}

TEST_CASE("replay equivalence across algorithms and random instances") {
    Rng rng(2024);
    const std::vector<u64> primes{11, 101, 1009};
    for (int it = 0; it < 500; ++it) {
        u64 p = primes[uniform_below(rng, primes.size())];
        u64 T = 2 + uniform_below(rng, 60);
        std::uint64_t seed = rng();
        switch (it % 6) {
            case 0: {
                SessionOptions o;
                o.nvars = 1;
                check_equivalence(game_of(algorithms::bsgs_dl(T), seed), GroupSpec::prime(p),
                                  {{1, 0}, {uniform_below(rng, p), 1}}, o, ModDomain{p, 1});
                break;
            }
            case 1: {
                SessionOptions o;
                o.nvars = 1;
                check_equivalence(game_of(algorithms::random_collision_dl(T), seed), GroupSpec::prime(p),
                                  {{1, 0}, {uniform_below(rng, p), 1}}, o, ModDomain{p, 1});
                break;
            }
            case 2: {
                SessionOptions o;
                o.nvars = 3;
                check_equivalence(game_of(algorithms::mdl_shared_bsgs(3, T), seed), GroupSpec::prime(p),
                                  {{1, 0}, {uniform_below(rng, p), 1}, {uniform_below(rng, p), 2}, {uniform_below(rng, p), 3}},
                                  o, ModDomain{p, 3});
                break;
            }
            case 3: {
                SessionOptions o;
                o.nvars = 3;
                o.dl_enabled = true;
                o.dl_budget = 1;
                o.challenges = 3;
                o.challenge_seed = seed;
                check_equivalence(game_of(algorithms::omdl_adversary(1, 1, 2, T), seed), GroupSpec::prime(p), {{1, 0}}, o,
                                  ModDomain{p, 3});
                break;
            }
            case 4: {
                SessionOptions o;
                o.nvars = 1;
                o.ddh_enabled = true;
                check_equivalence(game_of(algorithms::gap_dl_adversary(T), seed), GroupSpec::prime(p),
                                  {{1, 0}, {uniform_below(rng, p), 1}}, o, ModDomain{p, 1});
                break;
            }
            case 5: {
                SessionOptions o;
                o.nvars = 2;
                o.ddh_enabled = true;
                check_equivalence(game_of(algorithms::gap_cdh_adversary(T + 30), seed), GroupSpec::prime(p),
                                  {{1, 0}, {uniform_below(rng, p), 1}, {uniform_below(rng, p), 2}}, o, ModDomain{p, 2});
                break;
            }
        }
    }
}

TEST_CASE("integer-mode replay and coefficient growth") {
    Rng rng(77);
    for (int it = 0; it < 100; ++it) {
        u64 N = std::vector<u64>{11, 13, 131, 251, 143}[uniform_below(rng, 5)];
        unsigned n = algebra::ceil_log2(N + 1);
        SessionOptions o;
        check_equivalence(game_of(algorithms::generic_order_find(n), rng()), GroupSpec::hidden(N, n), {{1, 0}}, o,
                          IntDomain{0});
    }
    for (int it = 0; it < 200; ++it) {
        u64 T = 1 + uniform_below(rng, 40);
        std::uint64_t seed = rng();
        auto prog = [T](GroupApi& api, Rng& r) {
            std::vector<oracle::Element> w = api.inputs();
            for (u64 i = 0; i < T; ++i)
                w.push_back(api.op(w[uniform_below(r, w.size())], w[uniform_below(r, w.size())], bernoulli(r, 0.5)));
            return AlgorithmOutput::value(0);
        };
        SessionOptions o;
        o.nvars = 1;
        OracleSession s(GroupSpec::hidden(251, 8), {{1, 0}, {77, 1}}, o);
        oracle::play_live(game_of(prog, seed), s);
        auto tr = track_transcript(s.transcript(), IntDomain{1});
        CHECK(tr.max_coefficient() <= BigInt(1) << T);
    }
}

TEST_CASE("informative rate statistics") {
    InformativeConfig cfg;
    cfg.p = 101;
    cfg.nvars = 4;
    cfg.queries_per_trial = 190;
    cfg.trials = 100;
    cfg.seed = 3;
    auto st = informative_rate_stats(cfg);
    double q = 1.0 / 101;
    double sigma = std::sqrt(q * (1 - q) / double(st.total_queries));
    CHECK(st.rate() <= q + 3 * sigma);
    CHECK(st.rows.size() == 100);
    cfg.in_span_queries = true;
    auto zero = informative_rate_stats(cfg);
    CHECK(zero.total_informative == 0);
    CHECK(zero.rate() == 0.0);
}
