#include "genlab/common/error.hpp"
#include "genlab/harness/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using genlab::harness::ExperimentConfig;

namespace {

struct Sub {
    CLI::App* app;
    std::string out;
};

void common(CLI::App* s, ExperimentConfig& c, std::string& out) {
    s->add_option("--trials", c.trials, "number of trials")->capture_default_str();
    s->add_option("--seed", c.seed, "master seed")->capture_default_str();
    s->add_option("--threads", c.threads, "worker threads")->capture_default_str();
    s->add_option("--out", out, "CSV output path (default stdout); the config is written to <out>.config");
}

void ops(CLI::App* s, ExperimentConfig& c, const char* help = "element-gate budgets T, comma separated") {
    s->add_option("--ops", c.ops, help)->delimiter(',');
}

void modulus(CLI::App* s, ExperimentConfig& c, const char* names = "--prime,--order,--modulus") {
    s->add_option(names, c.modulus, "group order / modulus");
}

void algo(CLI::App* s, ExperimentConfig& c) { s->add_option("--algo", c.algo, "algorithm name"); }

void transcript(CLI::App* s, ExperimentConfig& c) {
    s->add_option("--transcript", c.transcript, "JSONL path for the first trial's live transcript");
}

void hidden(CLI::App* s, ExperimentConfig& c) {
    s->add_option("--bits", c.bits, "prime bit length n")->capture_default_str();
    s->add_option("--walkers", c.walkers, "random-multiples walkers")->capture_default_str();
    s->add_option("--spread", c.spread, "random-multiples extra bits")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genlab: generic group and ring model experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; keys are long option names, optionally under [subcommand]");
    ExperimentConfig cfg;
    std::string out;

    auto* dl = app.add_subcommand("dl-bound", "DL success rate against (T+3)^2/(2p)");
    auto* mdl = app.add_subcommand("mdl-bound", "m-MDL success rate against its bound");
    auto* omdl = app.add_subcommand("omdl-bound", "(m,n) more-DL success rate against its bound");
    auto* gap = app.add_subcommand("gap-bound", "gap-DL / gap-CDH success rate against (T^2+D)/p");
    auto* ord = app.add_subcommand("order-bound", "hidden-order order finding against T^3/2^n or T^4/2^2n");
    auto* aud = app.add_subcommand("audit-codec", "compression audit of one codec");
    auto* rrs = app.add_subcommand("audit-root-repeated", "root extraction / repeated squaring codecs");
    auto* rrt = app.add_subcommand("rr-translate", "random-representation translation agreement");
    auto* sms = app.add_subcommand("smooth-stats", "smoothing gate informative rate and subspace densities");
    auto* icl = app.add_subcommand("index-calculus", "index calculus in Z_q^*");
    auto* qs = app.add_subcommand("qsim", "quantum statevector programs");
    auto* eq = app.add_subcommand("eq-remove", "classical equality removal agreement");

    for (auto* s : {dl, mdl, omdl, gap, ord, aud, rrs, rrt, sms, icl, qs, eq}) common(s, cfg, out);
    for (auto* s : {dl, mdl, omdl, gap, aud}) {
        modulus(s, cfg);
        ops(s, cfg);
        algo(s, cfg);
        transcript(s, cfg);
    }
    for (auto* s : {mdl, omdl, aud}) s->add_option("-m,--instances", cfg.m, "MDL instances / OM-DL unsolved challenges");
    for (auto* s : {omdl, aud}) {
        s->add_option("--dl-queries", cfg.q, "OM-DL dl-oracle queries q")->capture_default_str();
        s->add_option("--solve", cfg.solve, "OM-DL extra solutions n")->capture_default_str();
    }
    for (auto* s : {gap, aud}) s->add_option("--ddh", cfg.ddh, "DDH query budget (default T/2)");
    gap->add_option("--problem", cfg.problem, "dl or cdh")->check(CLI::IsMember({"dl", "cdh"}));
    aud->add_option("--codec", cfg.codec, "dl mdl omdl gap-dl gap-cdh order rsa rsa-two root squaring")->required();

    for (auto* s : {ord, rrs, aud}) hidden(s, cfg);
    for (auto* s : {ord, rrs}) {
        ops(s, cfg);
        algo(s, cfg);
        transcript(s, cfg);
    }
    ord->add_option("--variant", cfg.variant, "order, rsa or rsa-two")->check(CLI::IsMember({"order", "rsa", "rsa-two"}));
    rrs->add_option("--game", cfg.game, "root or squaring")->check(CLI::IsMember({"root", "squaring"}));
    for (auto* s : {rrs, aud}) {
        s->add_option("--exponent", cfg.exponent, "root extraction exponent e")->capture_default_str();
        s->add_option("--squarings", cfg.squarings, "repeated squaring t")->capture_default_str();
    }

    modulus(rrt, cfg, "--order,--modulus");
    ops(rrt, cfg, "query budgets T, comma separated");
    rrt->add_option("--algo", cfg.algo, "bsgs or probe")->check(CLI::IsMember({"bsgs", "probe"}));
    rrt->add_option("--retries", cfg.retries, "labeling retries r; 0 is the faithful translation")
        ->capture_default_str();
    rrt->add_option("--label-space", cfg.label_space, "label set size |S| (default 2^(log N + 64))");

    for (auto* s : {sms, icl}) {
        modulus(s, cfg, "--prime,--order,--modulus");
        s->add_option("-B,--smooth-bound", cfg.smooth_bound, "smoothness bound")->capture_default_str();
    }
    sms->add_flag("--idealized", cfg.idealized, "idealized smooth set of density p_S");
    sms->add_option("--density", cfg.density, "idealized density p_S")->capture_default_str();
    sms->add_option("--samples", cfg.samples, "random wires sent through the smoothing gate")->capture_default_str();
    sms->add_option("--batch", cfg.batch, "wires per session")->capture_default_str();
    sms->add_option("--subspaces", cfg.subspaces, "random rank-2 subspaces compared with the coordinate plane")
        ->capture_default_str();
    icl->add_option("--attempts", cfg.attempts, "candidate relations per instance")->capture_default_str();

    qs->add_option("--program", cfg.program, "shor-dl, shor-order, or a JSON program file")->capture_default_str();
    modulus(qs, cfg, "--order,--modulus");
    qs->add_option("--x", cfg.x, "shor-dl: discrete log of h")->capture_default_str();
    qs->add_option("--base", cfg.base, "shor-order: base a")->capture_default_str();
    qs->add_option("--control-qubits", cfg.control_qubits, "shor-order: control qubits (default ceil(log2 N))");
    qs->add_flag("--delegated", cfg.delegated, "split registers between Alice and Bob");
    qs->add_option("--min-success", cfg.min_success, "required success probability")->capture_default_str();

    modulus(eq, cfg, "--order,--modulus");
    ops(eq, cfg, "classical budgets C, comma separated");
    algo(eq, cfg);

    CLI11_PARSE(app, argc, argv);
    cfg.experiment = app.get_subcommands().front()->get_name();

    try {
        std::ostringstream csv;
        bool pass = genlab::harness::run_experiment(cfg, csv);
        if (out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(out, std::ios::binary);
            std::ofstream c(out + ".config", std::ios::binary);
            if (!f || !c) throw genlab::ConfigError("cannot write " + out);
            f << csv.str();
            cfg.write(c);
        }
        if (!pass) std::cerr << "bound check failed\n";
        return pass ? 0 : 1;
    } catch (const genlab::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
}
