#include "genlab/harness/experiments.hpp"

#include "genlab/algebra/factor.hpp"
#include "genlab/algebra/modular.hpp"
#include "genlab/algorithms/algorithms.hpp"
#include "genlab/codecs/audit.hpp"
#include "genlab/common/bounds.hpp"
#include "genlab/common/error.hpp"
#include "genlab/quantum/eq_remove.hpp"
#include "genlab/quantum/shor.hpp"
#include "genlab/rr/rr.hpp"
#include "genlab/smooth/smooth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace genlab::harness {

using codecs::CodecKind;
using codecs::HiddenGame;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

const std::map<std::string, std::string> kDefaultAlgo = {
    {"dl", "bsgs"},        {"mdl", "shared-bsgs"}, {"omdl", "omdl"},       {"gap-dl", "gap-dl"},
    {"gap-cdh", "gap-cdh"}, {"order", "order-find"}, {"rsa", "order-find"}, {"rsa-two", "random-multiples"},
    {"root", "order-root"}, {"squaring", "shortcut"},
};

struct Defaults {
    u64 modulus;
    u64 ops;
};

const std::map<std::string, Defaults> kDefaults = {
    {"dl-bound", {1009, 32}},   {"mdl-bound", {31, 30}},   {"omdl-bound", {101, 24}},
    {"gap-bound", {101, 24}},   {"order-bound", {0, 40}},  {"audit-codec", {101, 22}},
    {"audit-root-repeated", {0, 80}}, {"rr-translate", {101, 10}}, {"smooth-stats", {1019, 0}},
    {"index-calculus", {1019, 0}}, {"qsim", {17, 0}},     {"eq-remove", {101 * 103, 10}},
};

ExperimentConfig resolved(ExperimentConfig c) {
    auto it = kDefaults.find(c.experiment);
    if (it == kDefaults.end()) throw ConfigError("unknown experiment: " + c.experiment);
    if (c.modulus == 0) c.modulus = it->second.modulus;
    if (c.ops.empty() && it->second.ops) c.ops = {it->second.ops};
    if (c.trials == 0) throw ConfigError("trials must be positive");
    return c;
}

std::string codec_of(const ExperimentConfig& c) {
    const auto& e = c.experiment;
    if (e == "dl-bound") return "dl";
    if (e == "mdl-bound") return "mdl";
    if (e == "omdl-bound") return "omdl";
    if (e == "gap-bound") {
        if (c.problem != "dl" && c.problem != "cdh") throw ConfigError("--problem must be dl or cdh");
        return "gap-" + c.problem;
    }
    if (e == "order-bound") return c.variant;
    if (e == "audit-root-repeated") {
        if (c.game != "root" && c.game != "squaring") throw ConfigError("--game must be root or squaring");
        return c.game;
    }
    if (c.codec.empty()) throw ConfigError("--codec is required");
    return c.codec;
}

bool hidden_family(const std::string& codec) {
    return codec == "order" || codec == "rsa" || codec == "rsa-two" || codec == "root" || codec == "squaring";
}

void dump_transcript(const codecs::Codec& codec, const ExperimentConfig& cfg) {
    if (cfg.transcript.empty()) return;
    std::ofstream out(cfg.transcript);
    if (!out) throw ConfigError("cannot write " + cfg.transcript);
    auto seeds = codecs::trial_seeds(cfg.seed, 0);
    Rng inst = make_rng(seeds.instance, "message");
    auto run = codec.run_live(codec.sample_message(inst), seeds);
    run.transcript.write_jsonl(out);
}

// Bound experiments: one row per budget, with the codec audit alongside.
bool bound_rows(const ExperimentConfig& cfg, std::ostream& os) {
    std::string codec_name = codec_of(cfg);
    os << "experiment,codec,algorithm,N,T,trials,successes,win_rate,bound,sigma,decoded,eps_hat,m_bits,logM,"
          "slack_bits,roundtrips,pass\n";
    bool all = true;
    for (std::size_t k = 0; k < cfg.ops.size(); ++k) {
        u64 T = cfg.ops[k];
        auto codec = make_codec(codec_name, cfg, T);
        if (k == 0) dump_transcript(*codec, cfg);
        auto row = codecs::audit_compression(*codec, cfg.trials, cfg.seed, cfg.threads);
        double win = static_cast<double>(row.successes) / static_cast<double>(row.trials);
        double bound = family_bound(codec_name, cfg, T);
        bool pass = within_upper(win, bound, row.trials) && row.pass && row.roundtrip_complete();
        all = all && pass;
        os << cfg.experiment << ',' << row.codec << ',' << row.algorithm << ',' << row.group << ',' << T << ','
           << row.trials << ',' << row.successes << ',' << fmt(win) << ',' << fmt(bound) << ','
           << fmt(binomial_sigma(bound, row.trials)) << ',' << row.decoded << ',' << fmt(row.eps_hat) << ','
           << fmt(row.m_bits) << ',' << fmt(row.log_m) << ',' << fmt(row.slack_bits) << ',' << row.roundtrips << ','
           << (pass ? 1 : 0) << '\n';
    }
    return all;
}

bool audit_rows(const ExperimentConfig& cfg, std::ostream& os) {
    std::string codec_name = codec_of(cfg);
    codecs::write_audit_header(os);
    bool all = true;
    for (std::size_t k = 0; k < cfg.ops.size(); ++k) {
        u64 T = cfg.ops[k];
        auto codec = make_codec(codec_name, cfg, T);
        if (k == 0) dump_transcript(*codec, cfg);
        auto row = codecs::audit_compression(*codec, cfg.trials, cfg.seed, cfg.threads);
        row.pass = row.pass && row.roundtrip_complete();
        all = all && row.pass;
        codecs::write_audit_row(os, row);
    }
    return all;
}

bool rr_rows(const ExperimentConfig& cfg, std::ostream& os) {
    const u64 N = cfg.modulus;
    std::string name = cfg.algo.empty() ? "bsgs" : cfg.algo;
    rr::LabelSpace space = cfg.label_space ? rr::LabelSpace::of_size(N, cfg.label_space) : rr::LabelSpace::standard(N);
    os << "algorithm,N,T,retries,trials,disagree,rate,bound,sigma,pass\n";
    bool all = true;
    for (u64 T : cfg.ops) {
        rr::RrAlgorithm alg;
        if (name == "bsgs") alg = rr::rr_bsgs(T);
        else if (name == "probe") alg = rr::unfaithful_probe(T > 3 ? T - 3 : 0);
        else throw ConfigError("unknown rr algorithm: " + name);
        auto differ = codecs::parallel_trials<int>(cfg.trials, cfg.threads, [&](u64 t) {
            Rng inst = make_rng(cfg.seed, "instance", t);
            std::vector<u64> inputs{1, uniform_below(inst, N)};
            u64 s = derive_seed(cfg.seed, "algorithm", t);
            auto native = rr::run_native(alg, space, inputs, s);
            try {
                return native.same_result(rr::run_translated(alg, space, inputs, s, cfg.retries)) ? 0 : 1;
            } catch (const UnfaithfulQuery&) {
                return 1;
            }
        });
        u64 d = 0;
        for (int v : differ) d += static_cast<u64>(v);
        double rate = static_cast<double>(d) / static_cast<double>(cfg.trials);
        double r = cfg.retries;
        double bound = cfg.retries ? r * std::pow(static_cast<double>(T) / static_cast<double>(N), r) : 0.0;
        bool pass = within_upper(rate, bound, cfg.trials);
        all = all && pass;
        os << name << ',' << N << ',' << T << ',' << cfg.retries << ',' << cfg.trials << ',' << d << ',' << fmt(rate)
           << ',' << fmt(bound) << ',' << fmt(binomial_sigma(bound, cfg.trials)) << ',' << (pass ? 1 : 0) << '\n';
    }
    return all;
}

smooth::SmoothConfig smooth_config(const ExperimentConfig& cfg) {
    smooth::SmoothConfig sc;
    sc.B = cfg.smooth_bound;
    if (cfg.idealized) {
        sc.mode = smooth::Mode::Idealized;
        sc.N = cfg.modulus;
        sc.p_S = cfg.density;
        sc.seed = derive_seed(cfg.seed, "label-table");
    } else {
        sc.q = cfg.modulus;
    }
    return sc;
}

// Rank-2 subspace spanned by two random vectors with entries in {0, 1, 2}.
smooth::AffineSpace random_plane(std::size_t b, Rng& rng) {
    for (;;) {
        std::vector<u64> u(b), v(b);
        for (std::size_t i = 0; i < b; ++i) {
            u[i] = uniform_below(rng, 3);
            v[i] = uniform_below(rng, 3);
        }
        bool independent = false;
        for (std::size_t i = 0; i < b && !independent; ++i)
            for (std::size_t j = i + 1; j < b && !independent; ++j) independent = u[i] * v[j] != u[j] * v[i];
        if (!independent) continue;
        smooth::AffineSpace V;
        V.basis = {u, v};
        V.offset.assign(b, 0);
        return V;
    }
}

bool smooth_rows(const ExperimentConfig& cfg, std::ostream& os) {
    smooth::SmoothGroup G(smooth_config(cfg));
    auto st = smooth::smooth_rate_stats(G, cfg.samples, cfg.batch, derive_seed(cfg.seed, "instance"));
    bool pass = cfg.idealized ? within_upper(st.rate(), st.density, st.samples)
                              : std::abs(st.rate() - st.density) <= 3 * st.sigma();
    std::size_t b = G.base_size();
    u64 exhaustive = cfg.idealized ? cfg.samples : 0;
    double coord = 0, best = 0;
    if (cfg.subspaces > 0 && b >= 2) {
        coord = smooth::subspace_smooth_density(G, smooth::AffineSpace::coordinates(b, {0, 1}), exhaustive,
                                                derive_seed(cfg.seed, "subspace"));
        Rng rng = make_rng(cfg.seed, "subspace-basis");
        for (u64 k = 0; k < cfg.subspaces; ++k) {
            double d = smooth::subspace_smooth_density(G, random_plane(b, rng), exhaustive,
                                                       derive_seed(cfg.seed, "subspace", k + 1));
            best = std::max(best, d);
        }
        pass = pass && coord >= best;
    }
    os << "mode,N,B,samples,smooth_hits,informative,rate,density,sigma,coord_density,max_random_density,pass\n";
    os << (cfg.idealized ? "idealized" : "concrete") << ',' << G.order() << ',' << cfg.smooth_bound << ','
       << st.samples << ',' << st.smooth_hits << ',' << st.informative << ',' << fmt(st.rate()) << ','
       << fmt(st.density) << ',' << fmt(st.sigma()) << ',' << fmt(coord) << ',' << fmt(best) << ','
       << (pass ? 1 : 0) << '\n';
    return pass;
}

bool index_calculus_rows(const ExperimentConfig& cfg, std::ostream& os) {
    if (cfg.idealized) throw ConfigError("index-calculus needs a concrete group");
    smooth::SmoothGroup G(smooth_config(cfg));
    struct Out {
        int solved = 0, verified = 0, sound = 0;
    };
    auto res = codecs::parallel_trials<Out>(cfg.trials, cfg.threads, [&](u64 t) {
        Rng inst = make_rng(cfg.seed, "instance", t);
        u64 x = uniform_below(inst, G.order());
        smooth::SmoothSession s(G, {x});
        Rng rng = make_rng(cfg.seed, "algorithm", t);
        auto got = smooth::index_calculus_dl(s, rng, cfg.attempts);
        Out o;
        o.solved = got.has_value();
        o.verified = got && G.representative(*got) == G.representative(x);
        o.sound = s.relations_sound();
        return o;
    });
    u64 solved = 0, verified = 0, sound = 0;
    for (const auto& o : res) {
        solved += o.solved;
        verified += o.verified;
        sound += o.sound;
    }
    bool pass = verified == solved && sound == cfg.trials;
    os << "q,B,trials,solved,verified,sound,pass\n";
    os << cfg.modulus << ',' << cfg.smooth_bound << ',' << cfg.trials << ',' << solved << ',' << verified << ','
       << sound << ',' << (pass ? 1 : 0) << '\n';
    return pass;
}

bool qsim_rows(const ExperimentConfig& cfg, std::ostream& os) {
    using namespace quantum;
    RunMode mode = cfg.delegated ? RunMode::Delegated : RunMode::Monolithic;
    Rng rng = make_rng(cfg.seed, "measure");
    const u64 N = cfg.modulus;
    if (cfg.program == "shor-dl" || cfg.program == "shor-order") {
        bool dl = cfg.program == "shor-dl";
        double success = 0;
        std::string candidate;
        DelegationTally tally;
        unsigned qubits = 0;
        u64 param = dl ? cfg.x : cfg.base;
        if (dl) {
            auto r = shor_dl_qggm(N, cfg.x, rng, mode);
            success = r.success;
            candidate = std::to_string(r.candidate);
            tally = r.tally;
            qubits = r.qubits;
        } else {
            auto r = shor_order_qgrm(N, cfg.base, rng, cfg.control_qubits, mode);
            success = r.success;
            candidate = r.candidate ? std::to_string(*r.candidate) : "";
            tally = r.tally;
            qubits = r.qubits;
        }
        double log2m = std::log2(static_cast<double>(N));
        bool comm = tally.communication_ok(log2m, success);
        bool pass = comm && success >= cfg.min_success;
        if (dl) pass = pass && tally.quantum_equalities == 0 && tally.quantum_gates <= 4 * algebra::ceil_log2(N);
        os << "program,N,param,mode,Q,equalities,classical_gates,qubits,success,log2_dims,log2M,communication_ok,"
              "candidate,pass\n";
        os << cfg.program << ',' << N << ',' << param << ',' << (cfg.delegated ? "delegated" : "monolithic") << ','
           << tally.quantum_gates << ',' << tally.quantum_equalities << ',' << tally.classical_gates << ',' << qubits
           << ',' << fmt(success) << ',' << fmt(tally.log2_dims) << ',' << fmt(log2m) << ',' << (comm ? 1 : 0) << ','
           << candidate << ',' << (pass ? 1 : 0) << '\n';
        return pass;
    }
    std::ifstream in(cfg.program);
    if (!in) throw ConfigError("cannot read program " + cfg.program);
    std::stringstream text;
    text << in.rdbuf();
    Program p = program_from_json(text.str());
    auto r = run_program(p, mode, rng);
    std::string meas;
    for (std::size_t i = 0; i < r.measurements.size(); ++i) meas += (i ? ";" : "") + std::to_string(r.measurements[i]);
    os << "program,model,N,mode,Q,equalities,classical_gates,log2_dims,norm,measurements\n";
    os << cfg.program << ',' << p.model << ',' << p.modulus << ',' << (cfg.delegated ? "delegated" : "monolithic")
       << ',' << r.tally.quantum_gates << ',' << r.tally.quantum_equalities << ',' << r.tally.classical_gates << ','
       << fmt(r.tally.log2_dims) << ',' << fmt(r.state.norm()) << ',' << meas << '\n';
    return true;
}

bool eq_remove_rows(const ExperimentConfig& cfg, std::ostream& os) {
    quantum::EqRemoveReport::write_header(os);
    std::string name = cfg.algo.empty() ? "random-collision" : cfg.algo;
    bool all = true;
    for (u64 C : cfg.ops) {
        quantum::EqRemoveConfig ec;
        ec.N = cfg.modulus;
        ec.C = C;
        ec.trials = cfg.trials;
        ec.seed = cfg.seed;
        ec.threads = cfg.threads;
        auto rep = quantum::remove_classical_equalities(make_algorithm(name, cfg, C), ec);
        all = all && rep.pass;
        rep.write_row(os, name.c_str());
    }
    return all;
}

}  // namespace

void ExperimentConfig::write(std::ostream& os) const {
    std::string ops_list;
    for (std::size_t i = 0; i < ops.size(); ++i) ops_list += (i ? "," : "") + std::to_string(ops[i]);
    os << '[' << experiment << "]\ncodec=" << codec << "\nalgo=" << algo << "\nproblem=" << problem
       << "\nvariant=" << variant << "\ngame=" << game << "\nmodulus=" << modulus << "\nbits=" << bits
       << "\nops=" << ops_list << "\ntrials=" << trials << "\nseed=" << seed << "\nthreads=" << threads
       << "\nm=" << m << "\nq=" << q << "\nsolve=" << solve << "\nddh=" << ddh << "\nexponent=" << exponent
       << "\nsquarings=" << squarings << "\nwalkers=" << walkers << "\nspread=" << spread
       << "\nretries=" << retries << "\nlabel-space=" << label_space << "\nsmooth-bound=" << smooth_bound
       << "\nidealized=" << (idealized ? "true" : "false") << "\ndensity=" << fmt(density)
       << "\nsamples=" << samples << "\nbatch=" << batch << "\nsubspaces=" << subspaces
       << "\nattempts=" << attempts << "\nprogram=" << program << "\nx=" << x << "\nbase=" << base
       << "\ncontrol-qubits=" << control_qubits << "\ndelegated=" << (delegated ? "true" : "false")
       << "\nmin-success=" << fmt(min_success) << '\n';
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "dl-bound",     "mdl-bound",    "omdl-bound",     "gap-bound", "order-bound", "audit-codec",
        "audit-root-repeated", "rr-translate", "smooth-stats", "index-calculus", "qsim", "eq-remove"};
    return names;
}

oracle::GenericAlgorithm make_algorithm(const std::string& name, const ExperimentConfig& cfg, u64 T) {
    using namespace algorithms;
    if (name == "bsgs") return bsgs_dl(T);
    if (name == "random-collision") return random_collision_dl(T);
    if (name == "pohlig-hellman") return pohlig_hellman_dl(algebra::factor_integer(BigInt(cfg.modulus)));
    if (name == "shared-bsgs") return mdl_shared_bsgs(cfg.m, T);
    if (name == "omdl") return omdl_adversary(cfg.q, cfg.solve, cfg.m, T);
    if (name == "gap-dl") return gap_dl_adversary(T);
    if (name == "gap-cdh") return gap_cdh_adversary(T);
    if (name == "order-find") return generic_order_find(cfg.variant == "order" ? cfg.bits : 2 * cfg.bits);
    if (name == "random-multiples")
        return random_multiple_order_find(cfg.variant == "order" ? cfg.bits : 2 * cfg.bits, cfg.walkers, cfg.spread);
    if (name == "order-root") return order_root_extractor(cfg.bits, cfg.exponent);
    if (name == "trivial-claim") return trivial_root_claim(cfg.exponent);
    if (name == "honest") return honest_squaring(cfg.squarings);
    if (name == "shortcut") return shortcut_squaring(cfg.bits, cfg.squarings);
    if (name == "truncated") return truncated_squaring(T);
    if (name == "identity") return quantum::identity_checks_only(T);
    throw ConfigError("unknown algorithm: " + name);
}

std::unique_ptr<codecs::Codec> make_codec(const std::string& codec, const ExperimentConfig& cfg, u64 T) {
    auto it = kDefaultAlgo.find(codec);
    if (it == kDefaultAlgo.end()) throw ConfigError("unknown codec: " + codec);
    std::string name = cfg.algo.empty() ? it->second : cfg.algo;
    u64 p = cfg.modulus;
    u64 ddh = cfg.ddh ? cfg.ddh : std::max<u64>(1, T / 2);
    if (!hidden_family(codec)) {
        if (!algebra::is_prime_u64(p)) throw ConfigError("known-order codecs need a prime modulus");
        auto alg = make_algorithm(name, cfg, T);
        if (codec == "dl") return codecs::make_dl_codec(p, T, alg, name);
        if (codec == "mdl") return codecs::make_mdl_codec(p, cfg.m, T, alg, name);
        if (codec == "omdl") return codecs::make_omdl_codec(p, cfg.q, cfg.solve, cfg.m, T, alg, name);
        if (codec == "gap-dl") return codecs::make_gap_dl_codec(p, T, ddh, alg, name);
        return codecs::make_gap_cdh_codec(p, T, ddh, alg, name);
    }
    ExperimentConfig c = cfg;
    codecs::HiddenOrderConfig h;
    h.n = cfg.bits;
    h.T = T;
    h.squarings = cfg.squarings;
    if (codec == "rsa") h.variant = CodecKind::Rsa;
    else if (codec == "rsa-two") h.variant = CodecKind::RsaTwo;
    else h.variant = CodecKind::Order;
    c.variant = codec == "rsa" || codec == "rsa-two" ? codec : "order";
    if (codec == "root") h.game = HiddenGame::RootExtraction;
    else if (codec == "squaring") h.game = HiddenGame::RepeatedSquaring;
    h.alg = make_algorithm(name, c, T);
    h.name = name;
    return codecs::make_hidden_order_codec(h);
}

double family_bound(const std::string& codec, const ExperimentConfig& cfg, u64 T) {
    const double t = static_cast<double>(T), p = static_cast<double>(cfg.modulus);
    const double e = std::numbers::e, m = static_cast<double>(cfg.m), n = static_cast<double>(cfg.solve);
    const double two_n = std::exp2(static_cast<double>(cfg.bits));
    double b = 0;
    if (codec == "dl") b = (t + 3) * (t + 3) / (2 * p);
    else if (codec == "mdl") b = std::pow(e * (t + 2 * m + 1) * (t + 2 * m + 1) / (2 * m * p), m);
    else if (codec == "omdl") b = std::pow(e * (t + m + n + 1) * (t + m + n + 1) / p, n);
    else if (codec == "gap-dl" || codec == "gap-cdh")
        b = (t * t + static_cast<double>(cfg.ddh ? cfg.ddh : std::max<u64>(1, T / 2))) / p;
    else if (codec == "order" || codec == "root") b = t * t * t / two_n;
    else if (codec == "rsa" || codec == "rsa-two") b = std::pow(t, 4) / (two_n * two_n);
    else if (codec == "squaring") b = std::pow(t + static_cast<double>(cfg.squarings), 3) / two_n;
    else throw ConfigError("unknown codec: " + codec);
    return std::min(b, 1.0);
}

bool run_experiment(const ExperimentConfig& raw, std::ostream& csv) {
    ExperimentConfig cfg = resolved(raw);
    const auto& e = cfg.experiment;
    if (e == "audit-codec") return audit_rows(cfg, csv);
    if (e == "rr-translate") return rr_rows(cfg, csv);
    if (e == "smooth-stats") return smooth_rows(cfg, csv);
    if (e == "index-calculus") return index_calculus_rows(cfg, csv);
    if (e == "qsim") return qsim_rows(cfg, csv);
    if (e == "eq-remove") return eq_remove_rows(cfg, csv);
    return bound_rows(cfg, csv);
}

}  // namespace genlab::harness
