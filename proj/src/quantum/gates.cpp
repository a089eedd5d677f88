#include "genlab/quantum/gates.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"

#include <cmath>
#include <numbers>

namespace genlab::quantum {

using algebra::add_mod;
using algebra::gcd_u64;
using algebra::mul_mod;
using algebra::sub_mod;

const char* element_gate_name(ElementGate g) {
    switch (g) {
        case ElementGate::Op: return "op";
        case ElementGate::Inv: return "inv";
        case ElementGate::Eq: return "eq";
    }
    return "?";
}

const char* ring_gate_name(RingGate g) {
    switch (g) {
        case RingGate::Add: return "add";
        case RingGate::Sub: return "sub";
        case RingGate::ProdAdd: return "prodadd";
        case RingGate::TestInv: return "testinv";
        case RingGate::InvAdd: return "invadd";
        case RingGate::Eq: return "eq";
    }
    return "?";
}

namespace {

void expect_kind(const QState& s, std::size_t reg, RegKind kind) {
    const auto& L = s.layout();
    require(reg < L.size(), "register index out of range");
    if (L[reg].kind != kind)
        throw ContractViolation("layout mismatch: " + L[reg].name + " is " + reg_kind_name(L[reg].kind) + ", expected " +
                                reg_kind_name(kind));
}

// Index with register reg changed to value v.
inline std::size_t with_digit(const RegisterLayout& L, std::size_t i, std::size_t reg, std::size_t v) {
    return i + (v - L.digit(i, reg)) * L.stride(reg);
}

// Core element update at one basis index; xr/yr are the addressed registers.
std::size_t element_image(const RegisterLayout& L, ElementGate g, std::size_t i, std::size_t b, std::size_t xr,
                          std::size_t yr) {
    if (xr == yr) return i;
    u64 N = L.modulus();
    std::size_t xv = L.digit(i, xr), yv = L.digit(i, yr);
    if (xv == N || yv == N) return i;
    std::size_t bv = L.digit(i, b);
    switch (g) {
        case ElementGate::Op:
            return bv ? with_digit(L, i, xr, add_mod(xv, yv, N)) : i;
        case ElementGate::Inv:
            return bv ? with_digit(L, i, xr, sub_mod(xv, yv, N)) : i;
        case ElementGate::Eq:
            return xv == yv ? with_digit(L, i, b, bv ^ 1) : i;
    }
    return i;
}

}  // namespace

void apply_element_gate(QState& s, ElementGate g, std::size_t b, std::size_t x, std::size_t y) {
    expect_kind(s, b, RegKind::Qubit);
    expect_kind(s, x, RegKind::Element);
    expect_kind(s, y, RegKind::Element);
    const auto L = s.layout();
    s.permute([&](std::size_t i) { return element_image(L, g, i, b, x, y); });
}

void apply_element_gate_tw(QState& s, ElementGate g, std::size_t b, std::size_t t, std::size_t w,
                           const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) {
    expect_kind(s, b, RegKind::Qubit);
    const auto L = s.layout();
    require(!xs.empty() && !ys.empty(), "(t,w) gate needs t, w >= 1");
    require(t < L.size() && L[t].kind != RegKind::Element && L[t].kind != RegKind::Ring && L[t].dim == xs.size(),
            "layout mismatch: index register T must have dimension t");
    require(w < L.size() && L[w].kind != RegKind::Element && L[w].kind != RegKind::Ring && L[w].dim == ys.size(),
            "layout mismatch: index register W must have dimension w");
    for (auto r : xs) expect_kind(s, r, RegKind::Element);
    for (auto r : ys) expect_kind(s, r, RegKind::Element);
    s.permute([&](std::size_t i) { return element_image(L, g, i, b, xs[L.digit(i, t)], ys[L.digit(i, w)]); });
}

void apply_ring_gate(QState& s, RingGate g, const RingOperands& r) {
    const u64 N = s.layout().modulus();
    if (g == RingGate::TestInv) {
        expect_kind(s, r.x, RegKind::Ring);
        expect_kind(s, r.b, RegKind::Qubit);
        const auto L = s.layout();
        s.permute([&](std::size_t i) {
            std::size_t xv = L.digit(i, r.x);
            if (xv == N || gcd_u64(xv, N) != 1) return i;
            return with_digit(L, i, r.b, L.digit(i, r.b) ^ 1);
        });
        return;
    }
    expect_kind(s, r.b, RegKind::Qubit);
    expect_kind(s, r.x, RegKind::Ring);
    expect_kind(s, r.y, RegKind::Ring);
    bool three = g == RingGate::ProdAdd || g == RingGate::InvAdd;
    if (three) expect_kind(s, r.z, RegKind::Ring);
    require(r.x != r.y && (!three || r.x != r.z), "ring gate target must differ from its operands");

    if (g == RingGate::InvAdd) {
        Register anc{"__invadd_ancilla", RegKind::Qubit, 2};
        std::size_t c = s.append(anc, 0);
        apply_ring_gate(s, RingGate::TestInv, {c, r.z, 0, 0});
        const auto L = s.layout();
        s.permute([&](std::size_t i) {
            if (!L.digit(i, r.b) || !L.digit(i, c)) return i;
            std::size_t xv = L.digit(i, r.x), yv = L.digit(i, r.y), zv = L.digit(i, r.z);
            if (xv == N || yv == N || zv == N) return i;
            auto zi = algebra::inv_mod(zv, N);
            if (!zi) return i;
            u64 q = mul_mod(yv, *zi, N);
            return with_digit(L, i, r.x, add_mod(xv, q, N));
        });
        apply_ring_gate(s, RingGate::TestInv, {c, r.z, 0, 0});
        s.discard(c);
        return;
    }

    const auto L = s.layout();
    s.permute([&](std::size_t i) {
        std::size_t xv = L.digit(i, r.x), yv = L.digit(i, r.y);
        if (xv == N || yv == N) return i;
        std::size_t bv = L.digit(i, r.b);
        switch (g) {
            case RingGate::Add: return bv ? with_digit(L, i, r.x, add_mod(xv, yv, N)) : i;
            case RingGate::Sub: return bv ? with_digit(L, i, r.x, sub_mod(xv, yv, N)) : i;
            case RingGate::ProdAdd: {
                std::size_t zv = L.digit(i, r.z);
                if (zv == N || !bv) return i;
                return with_digit(L, i, r.x, add_mod(xv, mul_mod(yv, zv, N), N));
            }
            case RingGate::Eq: return xv == yv ? with_digit(L, i, r.b, bv ^ 1) : i;
            default: return i;
        }
    });
}

void apply_unitary(QState& s, const std::vector<std::size_t>& regs, const std::vector<Amp>& matrix) {
    const auto& L = s.layout();
    std::size_t D = 1;
    for (auto r : regs) {
        require(r < L.size(), "register index out of range");
        require(L[r].kind == RegKind::Qubit || L[r].kind == RegKind::Qudit,
                "layout mismatch: qubit gates cannot act on element registers");
        D *= L[r].dim;
    }
    require(matrix.size() == D * D, "unitary has the wrong size");
    // offsets of each combined value relative to the all-zero setting
    std::vector<std::size_t> offset(D, 0);
    for (std::size_t v = 0; v < D; ++v) {
        std::size_t rest = v, off = 0;
        for (std::size_t k = regs.size(); k-- > 0;) {
            off += (rest % L[regs[k]].dim) * L.stride(regs[k]);
            rest /= L[regs[k]].dim;
        }
        offset[v] = off;
    }
    auto& amp = s.amplitudes();
    std::vector<Amp> in(D), out(D);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        bool base = true;
        for (auto r : regs)
            if (L.digit(i, r) != 0) {
                base = false;
                break;
            }
        if (!base) continue;
        for (std::size_t v = 0; v < D; ++v) in[v] = amp[i + offset[v]];
        for (std::size_t u = 0; u < D; ++u) {
            Amp acc{};
            for (std::size_t v = 0; v < D; ++v) acc += matrix[u * D + v] * in[v];
            out[u] = acc;
        }
        for (std::size_t v = 0; v < D; ++v) amp[i + offset[v]] = out[v];
    }
}

void hadamard(QState& s, std::size_t qubit) {
    const double h = std::numbers::sqrt2 / 2;
    apply_unitary(s, {qubit}, {h, h, h, -h});
}

void pauli_x(QState& s, std::size_t qubit) { apply_unitary(s, {qubit}, {0.0, 1.0, 1.0, 0.0}); }

std::vector<Amp> qft_matrix(std::size_t dim, bool inverse) {
    std::vector<Amp> m(dim * dim);
    double sign = inverse ? -1.0 : 1.0, scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t u = 0; u < dim; ++u)
        for (std::size_t v = 0; v < dim; ++v) {
            double angle = sign * 2.0 * std::numbers::pi * static_cast<double>((u * v) % dim) / static_cast<double>(dim);
            m[u * dim + v] = std::polar(scale, angle);
        }
    return m;
}

void qft(QState& s, const std::vector<std::size_t>& qubits, bool inverse) {
    for (auto q : qubits) expect_kind(s, q, RegKind::Qubit);
    apply_unitary(s, qubits, qft_matrix(std::size_t{1} << qubits.size(), inverse));
}

LabelResult classical_label_measure(QState& s, const std::vector<std::size_t>& qubits, const std::string& name,
                                    Rng& rng, RegKind kind) {
    require(kind == RegKind::Element || kind == RegKind::Ring, "labels produce element or ring registers");
    for (auto q : qubits) expect_kind(s, q, RegKind::Qubit);
    LabelResult out;
    out.value = qubits.empty() ? 0 : s.measure(qubits, rng);
    u64 N = s.layout().modulus();
    out.bottom = out.value >= N;
    out.reg = s.append(Register{name, kind, 0}, out.bottom ? N : out.value);
    return out;
}

}  // namespace genlab::quantum
