#include "genlab/quantum/eq_remove.hpp"

#include "genlab/algebra/factor.hpp"
#include "genlab/codecs/codec.hpp"
#include "genlab/codecs/parallel.ipp"
#include "genlab/common/bounds.hpp"
#include "genlab/oracle/session.hpp"
#include "genlab/tracker/replay.hpp"

#include <cstdio>

namespace genlab::quantum {

using oracle::AlgorithmOutput;
using oracle::GroupApi;

void EqRemoveReport::write_header(std::ostream& os) {
    os << "algorithm,N,p,C,m,trials,agree,agreement,bound,sigma,stripped,pass\n";
}

void EqRemoveReport::write_row(std::ostream& os, const char* algorithm) const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f,%llu,%d\n", algorithm,
                  (unsigned long long)N, (unsigned long long)p, (unsigned long long)C, (unsigned long long)m,
                  (unsigned long long)trials, (unsigned long long)agree, agreement, bound, sigma,
                  (unsigned long long)stripped, pass ? 1 : 0);
    os << buf;
}

namespace {

struct Trial {
    bool agree = false;
    std::uint64_t stripped = 0;
};

bool same_output(const AlgorithmOutput& a, const AlgorithmOutput& b) {
    return a.failed == b.failed && a.values == b.values && a.elements.size() == b.elements.size();
}

}  // namespace

EqRemoveReport remove_classical_equalities(const oracle::GenericAlgorithm& alg, const EqRemoveConfig& cfg) {
    require(cfg.N >= 2, "eq-remove: N must be at least 2");
    auto fact = algebra::factor_integer(cfg.N);
    EqRemoveReport rep;
    rep.N = cfg.N;
    rep.p = static_cast<std::uint64_t>(fact.factors.front().first);
    rep.C = cfg.C;
    rep.trials = cfg.trials;

    auto spec = algebra::is_prime_u64(cfg.N) ? oracle::GroupSpec::prime(cfg.N) : oracle::GroupSpec::composite(cfg.N);
    auto results = codecs::parallel_trials<Trial>(cfg.trials, cfg.threads, [&](std::uint64_t i) {
        auto seeds = codecs::trial_seeds(cfg.seed, i);
        Rng inst = make_rng(seeds.instance, "message");
        std::uint64_t x = uniform_below(inst, cfg.N);
        std::vector<oracle::InputSpec> inputs{{1, 0}, {x, 1}};
        oracle::SessionOptions opts;
        opts.budget = cfg.C;
        opts.nvars = 1;

        oracle::OracleSession live(spec, inputs, opts);
        AlgorithmOutput real = oracle::run_algorithm(alg, live, seeds.algorithm);

        std::vector<oracle::InputSpec> pub{{1, 0}, {0, 1}};
        tracker::ReplayPlan plan;
        plan.halt = false;
        tracker::ReplaySession<tracker::ModDomain> stripped(spec.public_info(), pub, opts,
                                                            tracker::ModDomain{cfg.N, 1, 0}, plan);
        AlgorithmOutput fake = oracle::run_algorithm(alg, stripped, seeds.algorithm);
        return Trial{same_output(real, fake), stripped.answers().size()};
    });
    for (const auto& t : results) {
        rep.agree += t.agree;
        rep.stripped += t.stripped;
    }
    rep.agreement = cfg.trials ? double(rep.agree) / double(cfg.trials) : 1.0;
    double w = double(cfg.C + rep.m + 1);
    rep.bound = 1.0 - w * w / (2.0 * double(rep.p));
    rep.sigma = binomial_sigma(rep.bound, cfg.trials);
    rep.pass = within_lower(rep.agreement, rep.bound, cfg.trials);
    return rep;
}

oracle::GenericAlgorithm identity_checks_only(std::uint64_t C) {
    return [C](GroupApi& api, Rng&) -> AlgorithmOutput {
        const auto& in = api.inputs();
        if (C < 3) return AlgorithmOutput::fail();
        auto gh = api.op(in[0], in[1], false);
        auto hg = api.op(in[1], in[0], false);
        bool a = api.equal(gh, hg);
        auto back = api.op(gh, in[0], true);
        bool b = api.equal(back, in[1]);
        return AlgorithmOutput::value(a && b ? 1 : 0);
    };
}

}  // namespace genlab::quantum
