#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace genlab::tracker {

struct InformativeRow {
    std::uint64_t trial = 0;
    std::uint64_t queries = 0;
    std::uint64_t informative_count = 0;
};

struct InformativeStats {
    std::vector<InformativeRow> rows;
    std::uint64_t total_queries = 0;
    std::uint64_t total_informative = 0;
    std::uint64_t tail_m = 0;
    std::uint64_t tail_hits = 0;  // trials with informative_count >= tail_m

    double rate() const { return total_queries ? double(total_informative) / double(total_queries) : 0.0; }
    double tail_rate() const { return rows.empty() ? 0.0 : double(tail_hits) / double(rows.size()); }
    void write_csv(std::ostream& os) const;
};

struct InformativeConfig {
    std::uint64_t p = 101;
    std::size_t nvars = 4;
    std::uint64_t queries_per_trial = 190;
    std::uint64_t trials = 100;
    std::uint64_t tail_m = 2;
    std::uint64_t seed = 0;
    bool in_span_queries = false;  // draw every query from the current span instead
};

// Per trial: hidden uniform x in Z_p^t, empty zero set; each query is a uniformly
// random relation outside the current span, counted informative when it vanishes at x.
InformativeStats informative_rate_stats(const InformativeConfig& cfg);

}  // namespace genlab::tracker
