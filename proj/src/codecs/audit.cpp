#include "genlab/codecs/audit.hpp"

#include <cmath>
#include <cstdio>

namespace genlab::codecs {

TrialResult run_trial(const Codec& codec, std::uint64_t seed, std::uint64_t trial) {
    TrialSeeds seeds = trial_seeds(seed, trial);
    Rng inst = make_rng(seeds.instance, "message");
    Message msg = codec.sample_message(inst);
    LiveRun run = codec.run_live(msg, seeds);
    Encoding enc = codec.encode(run, msg, seeds);
    CodeSpace space = codec.space();
    BigInt word = space.pack(enc);
    TrialResult r;
    r.success = run.success;
    r.bottom = enc.bottom;
    r.in_range = word < space.size();
    Decoded dec = codec.decode(space.unpack(codec.kind(), word), seeds);
    r.decoded = dec.message == msg;
    r.fallback = dec.fallback;
    return r;
}

AuditRow audit_compression(const Codec& codec, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    auto results = parallel_trials<TrialResult>(trials, threads, [&](std::uint64_t i) { return run_trial(codec, seed, i); });
    AuditRow row;
    row.codec = codec_name(codec.kind());
    row.algorithm = codec.algorithm();
    row.group = codec.group_label();
    row.T = codec.budget();
    row.trials = trials;
    for (const auto& r : results) {
        row.successes += r.success;
        row.decoded += r.decoded;
        row.roundtrips += r.success && r.decoded && !r.fallback;
    }
    double n = static_cast<double>(trials);
    row.eps_hat = trials ? static_cast<double>(row.decoded) / n : 0.0;
    row.sigma = trials ? std::sqrt(row.eps_hat * (1 - row.eps_hat) / n) : 0.0;
    row.m_bits = codec.space().log2_size();
    row.log_m = log2_big(codec.message_space());
    row.slack_bits = row.eps_hat > 0 ? row.m_bits - row.log_m - std::log2(row.eps_hat) : INFINITY;
    row.pass = row.eps_hat - 3 * row.sigma <= std::exp2(row.m_bits - row.log_m);
    return row;
}

void write_audit_header(std::ostream& os) {
    os << "codec,algorithm,N,T,trials,eps_hat,m_bits,logM,slack_bits,successes,roundtrips,pass\n";
}

void write_audit_row(std::ostream& os, const AuditRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f", r.eps_hat, r.m_bits, r.log_m, r.slack_bits);
    os << r.codec << ',' << r.algorithm << ',' << r.group << ',' << r.T << ',' << r.trials << ',' << buf << ','
       << r.successes << ',' << r.roundtrips << ',' << (r.pass ? 1 : 0) << '\n';
}

}  // namespace genlab::codecs
