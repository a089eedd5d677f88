#pragma once

#include "genlab/common/rng.hpp"
#include "genlab/oracle/session.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace genlab::smooth {

using u64 = std::uint64_t;
using oracle::Element;

enum class Mode { Concrete, Idealized };

struct SmoothConfig {
    Mode mode = Mode::Concrete;
    u64 q = 1019;        // concrete: prime modulus, group Z_q^* of order q - 1
    u64 N = 10007;       // idealized: prime group order
    u64 B = 7;           // smoothness bound
    double p_S = 0.05;   // idealized: target density |S| / N
    u64 seed = 0;        // idealized: factor-base logs and smooth set
};

struct FactorBase {
    u64 bound = 0;
    std::vector<u64> primes;
    std::vector<u64> logs;  // hidden z_i

    void write_json(std::ostream& os) const;
};

// The hidden structure shared by sessions: group, factor base, smooth set.
class SmoothGroup {
public:
    explicit SmoothGroup(const SmoothConfig& cfg);

    Mode mode() const { return cfg_.mode; }
    const SmoothConfig& config() const { return cfg_; }
    u64 order() const { return N_; }
    u64 generator() const { return g_; }           // concrete only
    u64 tracking_modulus() const { return ell_; }  // largest prime factor of the order
    const FactorBase& factor_base() const { return fb_; }
    std::size_t base_size() const { return fb_.primes.size(); }

    u64 representative(u64 e) const;  // concrete: g^e mod q
    // Exponent vector of the element g^e over the factor base, or nullopt when not smooth.
    std::optional<std::vector<u64>> smooth_vector(u64 e) const;

    // |S| by exhaustive enumeration (concrete) or the table size (idealized).
    u64 smooth_count() const;
    double density() const { return static_cast<double>(smooth_count()) / static_cast<double>(N_); }

private:
    SmoothConfig cfg_;
    u64 N_ = 0, g_ = 0, ell_ = 0;
    FactorBase fb_;
    std::unordered_map<u64, std::vector<u64>> table_;  // idealized smooth set
    mutable std::optional<u64> count_;
};

// Exponent vector of v over the primes, or nullopt when v has another prime factor.
std::optional<std::vector<u64>> trial_divide(u64 v, const std::vector<u64>& primes);

// Session with inputs g, g^{x_1..x_m}, then the factor base p_1..p_b as variables
// Z_1..Z_b (variable index m + i).
class SmoothSession : public oracle::OracleSession {
public:
    SmoothSession(const SmoothGroup& group, const std::vector<u64>& instance, oracle::SessionOptions opts = {});

    bool smooth_test(Element a);
    std::optional<std::vector<u64>> smoothing(Element a);

    const SmoothGroup& group() const { return group_; }
    std::size_t instance_vars() const { return m_; }
    Element factor_wire(std::size_t i) const { return inputs()[1 + m_ + i]; }

    // Every recorded smoothing relation holds at the hidden exponents, modulo the full order.
    bool relations_sound() const;

private:
    const SmoothGroup& group_;
    std::size_t m_;
};

// Basic index calculus on a concrete session with inputs (g, h). Tries at most
// `attempts` candidates g^r or g^r h; returns x only after checking label(x) == h.
std::optional<u64> index_calculus_dl(SmoothSession& s, Rng& rng, u64 attempts);

// Solves the linear system rows * (x_1..x_k) = rhs modulo n through its
// prime-power factors. Returns nullopt unless the solution is unique mod n.
std::optional<std::vector<u64>> solve_mod_composite(const std::vector<std::vector<u64>>& rows,
                                                    const std::vector<u64>& rhs, u64 n);

struct SmoothRateStats {
    u64 samples = 0;
    u64 smooth_hits = 0;
    u64 informative = 0;
    double density = 0;   // |S| / N
    double rate() const { return samples ? static_cast<double>(informative) / static_cast<double>(samples) : 0.0; }
    double sigma() const;  // binomial sigma at the density
};

// Fresh random wires g^r, `batch` per session, each sent through the smoothing gate.
SmoothRateStats smooth_rate_stats(const SmoothGroup& group, u64 samples, u64 batch, u64 seed);

// Affine space offset + span(basis) in Z^b, membership decided modulo the tracking prime.
struct AffineSpace {
    std::vector<std::vector<u64>> basis;
    std::vector<u64> offset;

    static AffineSpace coordinates(std::size_t b, const std::vector<std::size_t>& coords);
    bool contains(const std::vector<u64>& c, u64 p) const;
};

// |S_V| / N: Monte Carlo over `samples` random exponents, or exhaustive when samples = 0 (concrete).
double subspace_smooth_density(const SmoothGroup& group, const AffineSpace& V, u64 samples, u64 seed);

}  // namespace genlab::smooth
