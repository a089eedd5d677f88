#include "genlab/tracker/stats.hpp"

#include "genlab/common/rng.hpp"
#include "genlab/tracker/tracker.hpp"

namespace genlab::tracker {

void InformativeStats::write_csv(std::ostream& os) const {
    os << "trial,queries,informative_count\n";
    for (const auto& r : rows) os << r.trial << ',' << r.queries << ',' << r.informative_count << '\n';
}

InformativeStats informative_rate_stats(const InformativeConfig& cfg) {
    require(algebra::is_prime_u64(cfg.p), "informative_rate_stats: p must be prime");
    InformativeStats st;
    st.tail_m = cfg.tail_m;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = make_rng(cfg.seed, "instance", trial);
        std::vector<u64> x(cfg.nvars);
        for (auto& v : x) v = uniform_below(rng, cfg.p);
        ZeroSetModP zs(cfg.p, cfg.nvars);
        InformativeRow row{trial, 0, 0};
        for (std::uint64_t q = 0; q < cfg.queries_per_trial; ++q) {
            std::vector<u64> c(cfg.nvars + 1);
            LinPolyModN rel;
            if (cfg.in_span_queries) {
                rel = LinPolyModN::zero(cfg.p, cfg.nvars);
                for (const auto& r : zs.relations()) rel = rel + r.scaled(uniform_below(rng, cfg.p));
            } else {
                do {
                    for (auto& v : c) v = uniform_below(rng, cfg.p);
                    rel = LinPolyModN(cfg.p, c);
                } while (zs.contains(rel));
            }
            ++row.queries;
            if (rel.eval(x) != 0) continue;
            if (!zs.contains(rel)) {
                zs.insert(rel);
                ++row.informative_count;
            }
        }
        st.total_queries += row.queries;
        st.total_informative += row.informative_count;
        if (row.informative_count >= cfg.tail_m) ++st.tail_hits;
        st.rows.push_back(row);
    }
    return st;
}

}  // namespace genlab::tracker
