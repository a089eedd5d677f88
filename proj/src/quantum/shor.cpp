#include "genlab/quantum/shor.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/bigint.hpp"
#include "genlab/common/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace genlab::quantum {

using algebra::ceil_log2;
using algebra::pow_mod;

namespace {

std::string nm(const char* stem, unsigned i) { return stem + std::to_string(i); }

std::vector<std::string> msb_first(const char* stem, unsigned n) {
    std::vector<std::string> out;
    for (unsigned i = n; i-- > 0;) out.push_back(nm(stem, i));
    return out;
}

std::size_t sample(const std::vector<double>& probs, Rng& rng) {
    double u = uniform_unit(rng);
    for (std::size_t v = 0; v < probs.size(); ++v) {
        if (u < probs[v]) return v;
        u -= probs[v];
    }
    return probs.size() - 1;
}

std::vector<std::size_t> reg_indices(const QState& s, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(s.reg(n));
    return out;
}

}  // namespace

Program shor_dl_program(u64 N, u64 x) {
    require(N >= 2 && N <= 64, "shor_dl_qggm: N must lie in [2, 64]");
    require(x < N, "shor_dl_qggm: x must be reduced mod N");
    unsigned n = ceil_log2(N);
    Program p;
    p.model = "group";
    p.modulus = N;
    for (unsigned i = 0; i < n; ++i) p.reg(nm("a", i), RegKind::Qubit);
    for (unsigned i = 0; i < n; ++i) p.reg(nm("b", i), RegKind::Qubit);
    p.reg("one", RegKind::Qubit);
    p.reg("h0", RegKind::Element, x);

    for (unsigned i = 0; i < n; ++i) p.h(nm("a", i));
    for (unsigned i = 0; i < n; ++i) p.h(nm("b", i));
    p.x("one");
    p.label("acc", 0);
    for (unsigned i = 0; i < n; ++i) {
        p.element(ElementGate::Op, nm("b", i), "acc", nm("h", i));
        if (i + 1 < n) {
            p.label(nm("h", i + 1), 0);
            p.element(ElementGate::Op, "one", nm("h", i + 1), nm("h", i));
            p.element(ElementGate::Op, "one", nm("h", i + 1), nm("h", i));
        }
        p.discard(nm("h", i));
    }
    for (unsigned i = 0; i < n; ++i) {
        p.label(nm("g", i), pow_mod(2, i, N));
        p.element(ElementGate::Op, nm("a", i), "acc", nm("g", i));
        p.discard(nm("g", i));
    }
    p.qft(msb_first("a", n));
    p.qft(msb_first("b", n));
    return p;
}

u64 shor_dl_postprocess(u64 N, unsigned n, u64 c, u64 d) {
    u64 Q = u64{1} << n;
    u64 l = ((c * N + Q / 2) / Q) % N;
    u64 k = ((d * N + Q / 2) / Q) % N;
    auto li = algebra::inv_mod(l, N);
    if (!li) return 0;
    return algebra::mul_mod(k, *li, N);
}

ShorDlResult shor_dl_qggm(u64 N, u64 x, Rng& rng, RunMode mode) {
    Program p = shor_dl_program(N, x);
    unsigned n = ceil_log2(N);
    Rng unused(0);
    RunResult run = run_program(p, mode, unused);
    ShorDlResult out;
    out.qubits = n;
    out.tally = run.tally;
    auto regs = msb_first("a", n);
    auto bregs = msb_first("b", n);
    regs.insert(regs.end(), bregs.begin(), bregs.end());
    out.distribution = run.state.marginal(reg_indices(run.state, regs));
    u64 Q = u64{1} << n;
    for (u64 c = 0; c < Q; ++c)
        for (u64 d = 0; d < Q; ++d)
            if (shor_dl_postprocess(N, n, c, d) == x) out.success += out.distribution[c * Q + d];
    std::size_t v = sample(out.distribution, rng);
    out.candidate = shor_dl_postprocess(N, n, v / Q, v % Q);
    return out;
}

Program shor_order_program(u64 N, u64 a, unsigned m) {
    require(N >= 2 && N <= 21, "shor_order_qgrm: N must lie in [2, 21]");
    require(a < N && algebra::gcd_u64(a, N) == 1, "shor_order_qgrm: a must be invertible mod N");
    require(m >= 1, "shor_order_qgrm: need at least one control qubit");
    Program p;
    p.model = "ring";
    p.modulus = N;
    for (unsigned i = 0; i < m; ++i) p.reg(nm("c", i), RegKind::Qubit);
    p.reg("one", RegKind::Qubit);
    p.reg("k0", RegKind::Ring, a);

    for (unsigned i = 0; i < m; ++i) p.h(nm("c", i));
    p.x("one");
    p.alloc("y", 1);
    p.alloc("t", 0);
    for (unsigned i = 0; i < m; ++i) {
        std::string k = nm("k", i), b = nm("c", i);
        p.alloc("nk", 0);
        p.ring(RingGate::Sub, "one", "nk", k);
        // y -> k y when b = 1
        p.ring(RingGate::ProdAdd, b, "t", k, "y");
        p.ring(RingGate::InvAdd, b, "y", "t", "nk");
        p.ring(RingGate::Add, "one", "y", "t");
        p.ring(RingGate::Sub, b, "t", "y");
        p.discard("nk");
        if (i + 1 < m) {
            std::string next = nm("k", i + 1);
            p.alloc(next, 0);
            p.ring(RingGate::ProdAdd, "one", next, k, k);
        }
        p.discard(k);
    }
    p.qft(msb_first("c", m));
    return p;
}

std::optional<u64> order_from_measurement(u64 N, u64 a, unsigned m, u64 c) {
    u64 num = c, den = u64{1} << m;
    // denominators of the convergents of c / 2^m
    u64 k_prev = 0, k = 1;
    if (pow_mod(a, 1, N) == 1 % N) return 1;
    while (num != 0) {
        u64 q = den / num;
        u64 k_next = q * k + k_prev;
        if (k_next > N) break;
        k_prev = k;
        k = k_next;
        if (pow_mod(a, k, N) == 1 % N) return k;
        u64 r = den % num;
        den = num;
        num = r;
    }
    return std::nullopt;
}

bool factoring_output_valid(u64 N, u64 a, u64 r) {
    if (r == 0 || r % 2) return false;
    BigInt z = 1;
    for (u64 i = 0; i < r / 2; ++i) z *= a;
    z -= 1;
    BigInt g = boost::multiprecision::gcd(z, BigInt(N));
    return g > 1 && g < N;
}

ShorOrderResult shor_order_qgrm(u64 N, u64 a, Rng& rng, unsigned control_qubits, RunMode mode) {
    unsigned m = control_qubits ? control_qubits : ceil_log2(N);
    Program p = shor_order_program(N, a, m);
    Rng unused(0);
    RunResult run = run_program(p, mode, unused);
    ShorOrderResult out;
    out.order = algebra::multiplicative_order(a, N);
    out.qubits = m;
    out.tally = run.tally;
    out.distribution = run.state.marginal(reg_indices(run.state, msb_first("c", m)));
    for (u64 c = 0; c < out.distribution.size(); ++c)
        if (order_from_measurement(N, a, m, c) == out.order) out.success += out.distribution[c];
    out.candidate = order_from_measurement(N, a, m, sample(out.distribution, rng));
    out.factor_ok = factoring_output_valid(N, a, out.order);
    return out;
}

}  // namespace genlab::quantum
