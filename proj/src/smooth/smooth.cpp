#include "genlab/smooth/smooth.hpp"

#include "genlab/algebra/factor.hpp"
#include "genlab/algebra/modular.hpp"
#include "genlab/algebra/span_basis.hpp"
#include "genlab/common/error.hpp"
#include "genlab/tracker/tracker.hpp"

#include <cmath>
#include <json.hpp>

namespace genlab::smooth {

using algebra::add_mod;
using algebra::mul_mod;
using algebra::sub_mod;

namespace {
constexpr u64 kMaxConcreteModulus = u64(1) << 26;
}

void FactorBase::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    j["bound"] = bound;
    j["primes"] = primes;
    j["logs"] = logs;
    os << j.dump() << '\n';
}

std::optional<std::vector<u64>> trial_divide(u64 v, const std::vector<u64>& primes) {
    if (v == 0) return std::nullopt;
    std::vector<u64> c(primes.size(), 0);
    for (std::size_t i = 0; i < primes.size() && v > 1; ++i)
        while (v % primes[i] == 0) {
            v /= primes[i];
            ++c[i];
        }
    if (v != 1) return std::nullopt;
    return c;
}

SmoothGroup::SmoothGroup(const SmoothConfig& cfg) : cfg_(cfg) {
    if (cfg.B < 2) throw ConfigError("smooth: bound B must be at least 2");
    fb_.bound = cfg.B;
    if (cfg.mode == Mode::Concrete) {
        if (!algebra::is_prime_u64(cfg.q) || cfg.q < 3) throw ConfigError("smooth: q must be an odd prime");
        if (cfg.q > kMaxConcreteModulus) throw ConfigError("smooth: q too large for exhaustive tables");
        N_ = cfg.q - 1;
        g_ = algebra::primitive_root(cfg.q);
        for (u64 p : algebra::primes_up_to(cfg.B))
            if (p < cfg.q) fb_.primes.push_back(p);
        fb_.logs.assign(fb_.primes.size(), 0);
        std::unordered_map<u64, std::size_t> where;
        for (std::size_t i = 0; i < fb_.primes.size(); ++i) where[fb_.primes[i]] = i;
        u64 v = 1;
        for (u64 e = 0; e < N_; ++e) {
            auto it = where.find(v);
            if (it != where.end()) fb_.logs[it->second] = e;
            v = mul_mod(v, g_, cfg.q);
        }
        auto f = algebra::factor_integer(N_);
        ell_ = static_cast<u64>(f.factors.back().first);
    } else {
        if (!algebra::is_prime_u64(cfg.N)) throw ConfigError("smooth: idealized order must be prime");
        if (!(cfg.p_S >= 0 && cfg.p_S <= 1)) throw ConfigError("smooth: density must lie in [0, 1]");
        N_ = ell_ = cfg.N;
        fb_.primes = algebra::primes_up_to(cfg.B);
        Rng rng = make_rng(cfg.seed, "factor-base");
        for (std::size_t i = 0; i < fb_.primes.size(); ++i) fb_.logs.push_back(uniform_below(rng, N_));
        u64 target = static_cast<u64>(std::llround(cfg.p_S * static_cast<double>(N_)));
        Rng srng = make_rng(cfg.seed, "smooth-set");
        u64 attempts = 0, limit = 1000 + 400 * target;
        while (table_.size() < target) {
            if (++attempts > limit) throw ConfigError("smooth: density not reachable with this bound");
            auto c = trial_divide(1 + uniform_below(srng, N_), fb_.primes);
            if (!c) continue;
            u64 e = 0;
            for (std::size_t i = 0; i < c->size(); ++i) e = add_mod(e, mul_mod((*c)[i] % N_, fb_.logs[i], N_), N_);
            table_.emplace(e, *c);
        }
    }
}

u64 SmoothGroup::representative(u64 e) const {
    require(cfg_.mode == Mode::Concrete, "representatives exist only in concrete mode");
    return algebra::pow_mod(g_, e % N_, cfg_.q);
}

std::optional<std::vector<u64>> SmoothGroup::smooth_vector(u64 e) const {
    e %= N_;
    if (cfg_.mode == Mode::Concrete) return trial_divide(representative(e), fb_.primes);
    auto it = table_.find(e);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

u64 SmoothGroup::smooth_count() const {
    if (cfg_.mode == Mode::Idealized) return table_.size();
    if (!count_) {
        u64 n = 0, v = 1;
        for (u64 e = 0; e < N_; ++e) {
            n += trial_divide(v, fb_.primes).has_value();
            v = mul_mod(v, g_, cfg_.q);
        }
        count_ = n;
    }
    return *count_;
}

namespace {

std::vector<oracle::InputSpec> smooth_inputs(const SmoothGroup& g, const std::vector<u64>& instance) {
    std::vector<oracle::InputSpec> in{{1, 0}};
    int var = 1;
    for (u64 x : instance) in.push_back({x % g.order(), var++});
    for (u64 z : g.factor_base().logs) in.push_back({z, var++});
    return in;
}

oracle::GroupSpec smooth_spec(const SmoothGroup& g) {
    return g.mode() == Mode::Concrete ? oracle::GroupSpec::composite(g.order()) : oracle::GroupSpec::prime(g.order());
}

oracle::SessionOptions with_vars(oracle::SessionOptions o, std::size_t n) {
    o.nvars = n;
    return o;
}

}  // namespace

SmoothSession::SmoothSession(const SmoothGroup& group, const std::vector<u64>& instance, oracle::SessionOptions opts)
    : OracleSession(smooth_spec(group), smooth_inputs(group, instance), with_vars(opts, instance.size() + group.base_size())),
      group_(group), m_(instance.size()) {
    transcript_.factor_base_offset = m_ + 1;
}

bool SmoothSession::smooth_test(Element a) {
    const auto w = wire(a);
    auto& r = push(oracle::GateKind::SmoothTest);
    r.inputs = {a.id};
    ++transcript_.tallies.smooth_tests;
    bool in = w && group_.smooth_vector(*w).has_value();
    r.answer = in;
    return in;
}

std::optional<std::vector<u64>> SmoothSession::smoothing(Element a) {
    const auto w = wire(a);
    auto& r = push(oracle::GateKind::Smoothing);
    r.inputs = {a.id};
    ++transcript_.tallies.smoothings;
    std::optional<std::vector<u64>> c;
    if (w) c = group_.smooth_vector(*w);
    r.answer = c.has_value();
    if (c) r.vec = *c;
    return c;
}

bool SmoothSession::relations_sound() const {
    const auto& logs = group_.factor_base().logs;
    u64 N = group_.order();
    for (const auto& r : transcript_.records) {
        if (r.kind != oracle::GateKind::Smoothing || r.answer.value_or(0) != 1) continue;
        auto e = hidden_exponent(Element{r.inputs.at(0)});
        if (!e) return false;
        u64 s = 0;
        for (std::size_t i = 0; i < r.vec.size(); ++i) s = add_mod(s, mul_mod(r.vec[i] % N, logs[i], N), N);
        if (s != *e) return false;
    }
    return true;
}

namespace {

// Unique solution modulo a prime power m = l^k, pivoting on units only.
std::optional<std::vector<u64>> solve_prime_power(std::vector<std::vector<u64>> a, std::vector<u64> b, u64 l, u64 m) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (auto& row : a)
        for (auto& v : row) v %= m;
    for (auto& v : b) v %= m;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (a[r][c] % l != 0) {
                piv = r;
                break;
            }
        if (piv == rows) return std::nullopt;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        u64 inv = algebra::inv_mod_checked(a[rank][c], m);
        for (auto& v : a[rank]) v = mul_mod(v, inv, m);
        b[rank] = mul_mod(b[rank], inv, m);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            u64 f = a[r][c];
            for (std::size_t k = 0; k < cols; ++k) a[r][k] = sub_mod(a[r][k], mul_mod(f, a[rank][k], m), m);
            b[r] = sub_mod(b[r], mul_mod(f, b[rank], m), m);
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    return std::vector<u64>(b.begin(), b.begin() + static_cast<long>(cols));
}

}  // namespace

std::optional<std::vector<u64>> solve_mod_composite(const std::vector<std::vector<u64>>& rows,
                                                    const std::vector<u64>& rhs, u64 n) {
    require(rows.size() == rhs.size(), "solve_mod_composite: row count mismatch");
    if (rows.empty()) return std::nullopt;
    std::size_t cols = rows[0].size();
    std::vector<u64> sol(cols, 0);
    u64 mod = 1;
    for (const auto& [pb, k] : algebra::factor_integer(n).factors) {
        u64 l = static_cast<u64>(pb), m = 1;
        for (unsigned i = 0; i < k; ++i) m *= l;
        auto part = solve_prime_power(rows, rhs, l, m);
        if (!part) return std::nullopt;
        for (std::size_t c = 0; c < cols; ++c) sol[c] = algebra::crt_pair(sol[c], mod, (*part)[c], m);
        mod *= m;
    }
    return sol;
}

std::optional<u64> index_calculus_dl(SmoothSession& s, Rng& rng, u64 attempts) {
    require(s.instance_vars() == 1, "index calculus: expects inputs (g, h)");
    u64 N = s.group().order();
    std::size_t b = s.group().base_size();
    Element h = s.inputs()[1];
    std::vector<std::vector<u64>> rows;
    std::vector<u64> rhs;
    for (u64 i = 0; i < attempts; ++i) {
        bool with_h = i % 4 == 3;
        u64 r = uniform_below(rng, N);
        Element w = s.label(r);
        if (with_h) w = s.op(w, h, false);
        auto c = s.smoothing(w);
        if (!c) continue;
        // r + e x = sum c_i z_i  ->  e x - sum c_i z_i = -r
        std::vector<u64> row{with_h ? u64(1) : u64(0)};
        for (std::size_t k = 0; k < b; ++k) row.push_back(algebra::neg_mod((*c)[k] % N, N));
        rows.push_back(std::move(row));
        rhs.push_back(algebra::neg_mod(r, N));
        if (rows.size() < b + 1) continue;
        auto sol = solve_mod_composite(rows, rhs, N);
        if (!sol) continue;
        u64 x = (*sol)[0];
        if (s.equal(s.label(x), h)) return x;
    }
    return std::nullopt;
}

double SmoothRateStats::sigma() const {
    return samples ? std::sqrt(density * (1 - density) / static_cast<double>(samples)) : 0.0;
}

SmoothRateStats smooth_rate_stats(const SmoothGroup& group, u64 samples, u64 batch, u64 seed) {
    require(batch >= 1, "smooth_rate_stats: batch must be positive");
    SmoothRateStats st;
    st.samples = samples;
    st.density = group.density();
    for (u64 k = 0; k * batch < samples; ++k) {
        SmoothSession s(group, {});
        Rng rng = make_rng(seed, "smooth-sample", k);
        for (u64 i = k * batch; i < samples && i < (k + 1) * batch; ++i)
            st.smooth_hits += s.smoothing(s.label(uniform_below(rng, group.order()))).has_value();
        auto tr = tracker::track_transcript(
            s.transcript(), tracker::ModDomain{group.tracking_modulus(), group.base_size(), group.order()});
        st.informative += tr.informative_count();
    }
    return st;
}

AffineSpace AffineSpace::coordinates(std::size_t b, const std::vector<std::size_t>& coords) {
    AffineSpace V;
    V.offset.assign(b, 0);
    for (std::size_t c : coords) {
        require(c < b, "coordinate out of range");
        std::vector<u64> e(b, 0);
        e[c] = 1;
        V.basis.push_back(std::move(e));
    }
    return V;
}

bool AffineSpace::contains(const std::vector<u64>& c, u64 p) const {
    std::size_t b = offset.size();
    require(c.size() == b, "affine space: dimension mismatch");
    algebra::SpanBasisModP span(p, b);
    auto as_poly = [&](const std::vector<u64>& v) {
        std::vector<u64> coeffs{0};
        for (u64 x : v) coeffs.push_back(x % p);
        return algebra::LinPolyModN(p, coeffs);
    };
    for (const auto& v : basis) span.insert(as_poly(v));
    std::vector<u64> d(b);
    for (std::size_t i = 0; i < b; ++i) d[i] = sub_mod(c[i] % p, offset[i] % p, p);
    return span.contains(as_poly(d));
}

double subspace_smooth_density(const SmoothGroup& group, const AffineSpace& V, u64 samples, u64 seed) {
    u64 p = group.tracking_modulus(), N = group.order();
    u64 hits = 0;
    if (samples == 0) {
        require(group.mode() == Mode::Concrete, "exhaustive subspace counts need concrete mode");
        for (u64 e = 0; e < N; ++e) {
            auto c = group.smooth_vector(e);
            hits += c && V.contains(*c, p);
        }
        return static_cast<double>(hits) / static_cast<double>(N);
    }
    Rng rng = make_rng(seed, "subspace-sample");
    for (u64 i = 0; i < samples; ++i) {
        auto c = group.smooth_vector(uniform_below(rng, N));
        hits += c && V.contains(*c, p);
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace genlab::smooth
