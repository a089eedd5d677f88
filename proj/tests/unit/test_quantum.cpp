#include <doctest.h>

#include "genlab/algebra/modular.hpp"
#include "genlab/algorithms/algorithms.hpp"
#include "genlab/common/error.hpp"
#include "genlab/quantum/eq_remove.hpp"
#include "genlab/quantum/gates.hpp"
#include "genlab/quantum/program.hpp"
#include "genlab/quantum/shor.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

using namespace genlab;
using namespace genlab::quantum;

namespace {

constexpr double kTol = 1e-10;
// exact success probabilities from the closed-form oracles at N = 17 (x = 5) and N = 15 (a = 2)
constexpr double kShorDlFixture = 0.7567;
constexpr double kShorOrderFixture = 0.5 - 1e-10;

// b, x, y for the basic element gates
QState bxy(u64 N, std::size_t b, std::size_t x, std::size_t y, RegKind kind = RegKind::Element) {
    RegisterLayout L(N);
    L.append({"b", RegKind::Qubit, 2});
    L.append({"x", kind, 0});
    L.append({"y", kind, 0});
    QState s(L);
    s.set_basis({b, x, y});
    return s;
}

QState random_state(RegisterLayout L, Rng& rng) {
    QState s(L);
    double norm = 0;
    for (auto& a : s.amplitudes()) {
        a = {uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5};
        norm += std::norm(a);
    }
    for (auto& a : s.amplitudes()) a /= std::sqrt(norm);
    return s;
}

double amp_dev(const QState& a, const QState& b) { return max_deviation(a, b); }

// Matrix of a gate built column by column from basis inputs.
template <class F>
std::vector<Amp> gate_matrix(const RegisterLayout& L, F apply) {
    std::size_t D = L.total();
    std::vector<Amp> m(D * D);
    for (std::size_t col = 0; col < D; ++col) {
        QState s(L);
        s.amplitudes().assign(D, Amp{});
        s.amplitudes()[col] = 1.0;
        apply(s);
        for (std::size_t row = 0; row < D; ++row) m[row * D + col] = s.amplitudes()[row];
    }
    return m;
}

// max |U^† U - I| using the sparsity of U (entries below 1e-14 dropped)
double unitarity_deviation(const std::vector<Amp>& m, std::size_t D) {
    std::vector<std::vector<std::pair<std::size_t, Amp>>> rows(D);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            if (std::abs(m[i * D + j]) > 1e-14) rows[i].emplace_back(j, m[i * D + j]);
    std::map<std::pair<std::size_t, std::size_t>, Amp> gram;
    for (const auto& row : rows)
        for (const auto& [a, va] : row)
            for (const auto& [b, vb] : row) gram[{a, b}] += std::conj(va) * vb;
    double dev = 0;
    for (std::size_t c = 0; c < D; ++c)
        if (!gram.count({c, c})) dev = 1.0;
    for (const auto& [ij, v] : gram) dev = std::max(dev, std::abs(v - Amp(ij.first == ij.second ? 1.0 : 0.0)));
    return dev;
}

}  // namespace

TEST_CASE("element gates on basis states") {
    auto s = bxy(5, 1, 2, 3);
    apply_element_gate(s, ElementGate::Op, 0, 1, 2);
    CHECK(s.amplitudes()[s.index_of({1, 0, 3})] == Amp(1.0));

    auto bot = bxy(5, 1, 5, 3);
    auto before = bot;
    apply_element_gate(bot, ElementGate::Op, 0, 1, 2);
    CHECK(amp_dev(bot, before) == 0.0);

    auto e = bxy(5, 1, 4, 4);
    apply_element_gate(e, ElementGate::Eq, 0, 1, 2);
    CHECK(e.amplitudes()[e.index_of({0, 4, 4})] == Amp(1.0));
    auto e2 = bxy(5, 1, 4, 1);
    apply_element_gate(e2, ElementGate::Inv, 0, 1, 2);
    CHECK(e2.amplitudes()[e2.index_of({1, 3, 1})] == Amp(1.0));
}

TEST_CASE("op is linear over a superposed control") {
    auto s = bxy(5, 0, 1, 1);
    hadamard(s, 0);
    apply_element_gate(s, ElementGate::Op, 0, 1, 2);
    const double h = std::numbers::sqrt2 / 2;
    CHECK(std::abs(s.amplitudes()[s.index_of({0, 1, 1})] - Amp(h)) < kTol);
    CHECK(std::abs(s.amplitudes()[s.index_of({1, 2, 1})] - Amp(h)) < kTol);
    CHECK(std::abs(s.norm() - 1.0) < kTol);
}

TEST_CASE("gates reject registers of the wrong kind") {
    auto s = bxy(5, 0, 1, 1);
    CHECK_THROWS_AS(apply_element_gate(s, ElementGate::Op, 1, 0, 2), ContractViolation);
    CHECK_THROWS_AS(apply_ring_gate(s, RingGate::Add, {0, 1, 2, 0}), ContractViolation);
    CHECK_THROWS_AS(hadamard(s, 1), ContractViolation);
}

TEST_CASE("ring gates") {
    RegisterLayout L(15);
    L.append({"b", RegKind::Qubit, 2});
    L.append({"x", RegKind::Ring, 0});
    L.append({"y", RegKind::Ring, 0});
    L.append({"z", RegKind::Ring, 0});
    QState s(L);
    s.set_basis({1, 1, 2, 4});
    apply_ring_gate(s, RingGate::ProdAdd, {0, 1, 2, 3});
    CHECK(s.amplitudes()[s.index_of({1, 9, 2, 4})] == Amp(1.0));

    QState t(L);
    t.set_basis({0, 5, 0, 0});
    apply_ring_gate(t, RingGate::TestInv, {0, 1, 0, 0});
    CHECK(t.amplitudes()[t.index_of({0, 5, 0, 0})] == Amp(1.0));
    t.set_basis({0, 7, 0, 0});
    apply_ring_gate(t, RingGate::TestInv, {0, 1, 0, 0});
    CHECK(t.amplitudes()[t.index_of({1, 7, 0, 0})] == Amp(1.0));

    // inverse of 2 mod 15 by search
    u64 inv2 = 0;
    for (u64 v = 1; v < 15; ++v)
        if ((2 * v) % 15 == 1) inv2 = v;
    QState u(L);
    u.set_basis({1, 0, 3, 2});
    apply_ring_gate(u, RingGate::InvAdd, {0, 1, 2, 3});
    CHECK(u.layout().size() == 4);
    CHECK(u.amplitudes()[u.index_of({1, (3 * inv2) % 15, 3, 2})] == Amp(1.0));

    // z = 5 is not a unit: nothing is added
    u.set_basis({1, 4, 3, 5});
    apply_ring_gate(u, RingGate::InvAdd, {0, 1, 2, 3});
    CHECK(u.amplitudes()[u.index_of({1, 4, 3, 5})] == Amp(1.0));

    CHECK_THROWS_AS(apply_ring_gate(u, RingGate::Add, {0, 1, 1, 0}), ContractViolation);
}

TEST_CASE("classical labeling") {
    RegisterLayout L(11);
    for (int i = 0; i < 4; ++i) L.append({"q" + std::to_string(i), RegKind::Qubit, 2});
    QState s(L);
    s.set_basis({0, 1, 1, 0});
    Rng rng(1);
    auto r = classical_label_measure(s, {0, 1, 2, 3}, "e", rng);
    CHECK(r.value == 6);
    CHECK_FALSE(r.bottom);
    CHECK(s.definite(r.reg) == std::optional<std::size_t>(6));

    QState big(L);
    big.set_basis({1, 1, 0, 1});
    auto rb = classical_label_measure(big, {0, 1, 2, 3}, "e", rng);
    CHECK(rb.value == 13);
    CHECK(rb.bottom);
    CHECK(big.definite(rb.reg) == std::optional<std::size_t>(11));

    int ones = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        QState q(L);
        hadamard(q, 3);
        ones += classical_label_measure(q, {3}, "e", rng).value == 1;
    }
    double f = double(ones) / n;
    CHECK(std::abs(f - 0.5) <= 3 * std::sqrt(0.25 / n));
}

TEST_CASE("element and ring gates are unitary, inverse pairs cancel, bottom is fixed") {
    Rng rng(7);
    for (u64 N = 2; N <= 7; ++N) {
        for (RegKind kind : {RegKind::Element, RegKind::Ring}) {
            RegisterLayout L(N);
            L.append({"b", RegKind::Qubit, 2});
            L.append({"x", kind, 0});
            L.append({"y", kind, 0});
            if (kind == RegKind::Ring) L.append({"z", kind, 0});
            std::size_t D = L.total();

            std::vector<std::function<void(QState&)>> gates;
            if (kind == RegKind::Element) {
                for (auto g : {ElementGate::Op, ElementGate::Inv, ElementGate::Eq})
                    gates.push_back([g](QState& s) { apply_element_gate(s, g, 0, 1, 2); });
            } else {
                for (auto g : {RingGate::Add, RingGate::Sub, RingGate::ProdAdd, RingGate::InvAdd, RingGate::Eq})
                    gates.push_back([g](QState& s) { apply_ring_gate(s, g, {0, 1, 2, 3}); });
                gates.push_back([](QState& s) { apply_ring_gate(s, RingGate::TestInv, {0, 1, 0, 0}); });
            }
            for (auto& g : gates) CHECK(unitarity_deviation(gate_matrix(L, g), D) <= kTol);

            for (int trial = 0; trial < 100; ++trial) {
                QState s = random_state(L, rng);
                QState t = s;
                if (kind == RegKind::Element) {
                    apply_element_gate(t, ElementGate::Op, 0, 1, 2);
                    apply_element_gate(t, ElementGate::Inv, 0, 1, 2);
                    CHECK(amp_dev(s, t) <= kTol);
                    apply_element_gate(t, ElementGate::Eq, 0, 1, 2);
                    apply_element_gate(t, ElementGate::Eq, 0, 1, 2);
                    CHECK(amp_dev(s, t) <= kTol);
                } else {
                    apply_ring_gate(t, RingGate::Add, {0, 1, 2, 3});
                    apply_ring_gate(t, RingGate::Sub, {0, 1, 2, 3});
                    CHECK(amp_dev(s, t) <= kTol);
                }
                for (std::size_t k = 0; k < gates.size(); ++k) {
                    QState u = s;
                    gates[k](u);
                    CHECK(std::abs(u.norm() - 1.0) <= kTol);
                    // TestInv (last ring gate) reads x only
                    bool reads_y = !(kind == RegKind::Ring && k + 1 == gates.size());
                    const auto& Lu = u.layout();
                    double dev = 0;
                    for (std::size_t i = 0; i < D; ++i)
                        if (Lu.digit(i, 1) == N || (reads_y && Lu.digit(i, 2) == N))
                            dev = std::max(dev, std::abs(u.amplitudes()[i] - s.amplitudes()[i]));
                    CHECK(dev <= kTol);
                }
            }
        }
    }
}

TEST_CASE("(t,w) gates address registers through index qudits") {
    const u64 N = 5;
    RegisterLayout L(N);
    L.append({"b", RegKind::Qubit, 2});
    L.append({"t", RegKind::Qudit, 2});
    L.append({"w", RegKind::Qudit, 2});
    L.append({"x0", RegKind::Element, 0});
    L.append({"x1", RegKind::Element, 0});
    L.append({"y1", RegKind::Element, 0});
    // ys = {x0, y1}: branch (i=0, j=0) addresses the same register and is left alone
    std::vector<std::size_t> xs{3, 4}, ys{3, 5};
    QState s(L);
    s.set_basis({1, 0, 0, 2, 3, 4});
    apply_element_gate_tw(s, ElementGate::Op, 0, 1, 2, xs, ys);
    CHECK(s.amplitudes()[s.index_of({1, 0, 0, 2, 3, 4})] == Amp(1.0));
    s.set_basis({1, 1, 1, 2, 3, 4});
    apply_element_gate_tw(s, ElementGate::Op, 0, 1, 2, xs, ys);
    CHECK(s.amplitudes()[s.index_of({1, 1, 1, 2, 2, 4})] == Amp(1.0));
    s.set_basis({1, 1, 0, 2, 3, 4});
    apply_element_gate_tw(s, ElementGate::Inv, 0, 1, 2, xs, ys);
    CHECK(s.amplitudes()[s.index_of({1, 1, 0, 2, 1, 4})] == Amp(1.0));

    CHECK(unitarity_deviation(gate_matrix(L, [&](QState& q) { apply_element_gate_tw(q, ElementGate::Op, 0, 1, 2, xs, ys); }),
                              L.total()) <= kTol);
    CHECK_THROWS_AS(apply_element_gate_tw(s, ElementGate::Op, 0, 1, 2, {3, 4, 5}, ys), ContractViolation);
}

namespace {

Program random_program(u64 N, Rng& rng, int gates) {
    Program p;
    p.modulus = N;
    p.reg("b0", RegKind::Qubit);
    p.reg("b1", RegKind::Qubit);
    p.reg("t", RegKind::Qudit, 0, 2);
    p.reg("w", RegKind::Qudit, 0, 2);
    p.reg("x0", RegKind::Element, 1);
    p.reg("x1", RegKind::Element, 2 % N);
    p.h("b0");
    p.h("b1");
    p.qft({"b0", "b1"});
    std::vector<std::string> qs{"b0", "b1"}, es{"x0", "x1"};
    p.label("x2", uniform_below(rng, N + 1));
    es.push_back("x2");
    for (int i = 0; i < gates; ++i) {
        auto g = static_cast<ElementGate>(uniform_below(rng, 3));
        std::string b = qs[uniform_below(rng, 2)];
        if (uniform_below(rng, 3) == 0) {
            p.element_tw(g, b, "t", "w", {es[0], es[1]}, {es[1], es[2]});
        } else {
            std::size_t xi = uniform_below(rng, 3), yi = (xi + 1 + uniform_below(rng, 2)) % 3;
            p.element(g, b, es[xi], es[yi]);
        }
        if (uniform_below(rng, 4) == 0) p.h(qs[uniform_below(rng, 2)]);
    }
    return p;
}

}  // namespace

TEST_CASE("delegated and monolithic runs agree") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        u64 N = 2 + uniform_below(rng, 6);
        Program p = random_program(N, rng, 12);
        p.h("t");
        Rng r1(5), r2(5);
        auto mono = run_program(p, RunMode::Monolithic, r1);
        auto del = run_program(p, RunMode::Delegated, r2);
        CHECK(max_deviation(mono.state, del.state) <= kTol);
        CHECK(mono.held == del.held);
        CHECK(mono.tally.quantum_gates == del.tally.quantum_gates);
        CHECK(mono.tally.qubits_to_alice == del.tally.qubits_to_alice);
    }
}

TEST_CASE("delegation tally") {
    Program p;
    p.modulus = 7;
    p.reg("b", RegKind::Qubit);
    p.reg("x", RegKind::Element, 1);
    p.reg("y", RegKind::Element, 2);
    p.h("b");
    for (int i = 0; i < 3; ++i) p.element(ElementGate::Op, "b", "x", "y");
    Rng r(1);
    auto res = run_program(p, RunMode::Delegated, r);
    CHECK(res.tally.quantum_gates == 3);
    CHECK(res.tally.qubits_to_alice == 3);
    CHECK(res.tally.classical_gates == 0);

    Program q;
    q.modulus = 7;
    q.reg("b", RegKind::Qubit);
    q.reg("t", RegKind::Qudit, 0, 1);
    q.reg("w", RegKind::Qudit, 0, 5);
    for (int i = 0; i < 5; ++i) q.reg("y" + std::to_string(i), RegKind::Element, i);
    q.reg("x", RegKind::Element, 0);
    q.qft({"b"});
    q.element_tw(ElementGate::Op, "b", "t", "w", {"x"}, {"y0", "y1", "y2", "y3", "y4"});
    auto rq = run_program(q, RunMode::Delegated, r);
    CHECK(rq.tally.quantum_gates == 1);
    CHECK(rq.tally.qubits_to_alice == 4);

    // every operand definite: a classical gate, not charged as quantum
    Program c;
    c.modulus = 7;
    c.reg("b", RegKind::Qubit, 1);
    c.reg("x", RegKind::Element, 1);
    c.reg("y", RegKind::Element, 2);
    c.element(ElementGate::Op, "b", "x", "y");
    auto rc = run_program(c, RunMode::Monolithic, r);
    CHECK(rc.tally.quantum_gates == 0);
    CHECK(rc.tally.classical_gates == 1);
    REQUIRE(rc.held.size() == 2);
    CHECK(rc.held[0] == std::pair<std::string, std::size_t>("x", 3));
}

TEST_CASE("program json round trip") {
    Rng rng(3);
    Program p = random_program(5, rng, 8);
    std::string text = program_to_json(p);
    Program q = program_from_json(text);
    CHECK(program_to_json(q) == text);
    Rng r1(9), r2(9);
    auto a = run_program(p, RunMode::Monolithic, r1);
    auto b = run_program(q, RunMode::Monolithic, r2);
    CHECK(max_deviation(a.state, b.state) == 0.0);

    Program ring = shor_order_program(15, 2, 3);
    CHECK(program_to_json(program_from_json(program_to_json(ring))) == program_to_json(ring));
    CHECK_THROWS_AS(program_from_json("{\"modulus\": 5, \"registers\": [], \"gates\": [{\"gate\": \"nope\"}]}"),
                    ConfigError);
}

TEST_CASE("layout cap") {
    RegisterLayout L(63, std::size_t{1} << 12);
    L.append({"a", RegKind::Element, 0});
    L.append({"b", RegKind::Element, 0});
    CHECK_THROWS_AS(L.append({"c", RegKind::Qubit, 2}), ConfigError);
}

namespace {

// Closed form of the DL circuit: amplitude of (c, d, e) is
// 2^-2n sum over a + x b = e (mod N) of exp(2 pi i (ac + bd) / 2^n).
std::vector<double> dl_distribution_oracle(u64 N, u64 x) {
    unsigned n = algebra::ceil_log2(N);
    u64 Q = u64{1} << n;
    std::vector<double> out(Q * Q, 0.0);
    for (u64 c = 0; c < Q; ++c)
        for (u64 d = 0; d < Q; ++d) {
            double total = 0;
            for (u64 e = 0; e < N; ++e) {
                Amp acc{};
                for (u64 a = 0; a < Q; ++a)
                    for (u64 b = 0; b < Q; ++b)
                        if ((a + x * b) % N == e)
                            acc += std::polar(1.0, 2 * std::numbers::pi * double((a * c + b * d) % Q) / double(Q));
                total += std::norm(acc);
            }
            out[c * Q + d] = total / double(Q * Q * Q * Q);
        }
    return out;
}

std::vector<double> order_distribution_oracle(u64 N, u64 a, unsigned m) {
    u64 Q = u64{1} << m;
    std::vector<double> out(Q, 0.0);
    for (u64 c = 0; c < Q; ++c)
        for (u64 v = 0; v < N; ++v) {
            Amp acc{};
            for (u64 e = 0; e < Q; ++e)
                if (algebra::pow_mod(a, e, N) == v)
                    acc += std::polar(1.0, 2 * std::numbers::pi * double((e * c) % Q) / double(Q));
            out[c] += std::norm(acc) / double(Q * Q);
        }
    return out;
}

}  // namespace

TEST_CASE("shor dl matches the closed form") {
    Rng rng(1);
    for (u64 x : {0ull, 1ull, 3ull}) {
        auto res = shor_dl_qggm(5, x, rng);
        auto want = dl_distribution_oracle(5, x);
        REQUIRE(res.distribution.size() == want.size());
        double dev = 0;
        for (std::size_t i = 0; i < want.size(); ++i) dev = std::max(dev, std::abs(res.distribution[i] - want[i]));
        CHECK(dev <= kTol);
    }
    auto zero = shor_dl_qggm(17, 0, rng);
    CHECK(std::abs(zero.success - 1.0) <= kTol);
    CHECK(zero.candidate == 0);
}

TEST_CASE("shor dl at 17") {
    Rng rng(2);
    auto res = shor_dl_qggm(17, 5, rng);
    CHECK(res.success >= kShorDlFixture);
    CHECK(res.tally.quantum_gates <= 4 * algebra::ceil_log2(17));
    CHECK(res.tally.quantum_equalities == 0);
    CHECK(res.tally.communication_ok(std::log2(17.0), res.success));
    auto del = shor_dl_qggm(17, 5, rng, RunMode::Delegated);
    CHECK(std::abs(del.success - res.success) <= kTol);
}

TEST_CASE("shor order in the ring model") {
    Rng rng(3);
    for (unsigned m : {3u, 4u}) {
        auto res = shor_order_qgrm(15, 2, rng, m);
        auto want = order_distribution_oracle(15, 2, m);
        double dev = 0;
        for (std::size_t i = 0; i < want.size(); ++i) dev = std::max(dev, std::abs(res.distribution[i] - want[i]));
        CHECK(dev <= kTol);
    }
    auto res = shor_order_qgrm(15, 2, rng);
    CHECK(res.success >= kShorOrderFixture);
    CHECK(res.order == 4);
    CHECK(res.factor_ok);
    CHECK(res.tally.quantum_equalities == 0);
    CHECK(res.tally.communication_ok(std::log2(15.0), res.success));

    auto one = shor_order_qgrm(15, 1, rng);
    CHECK(one.candidate == std::optional<u64>(1));
    CHECK(std::abs(one.success - 1.0) <= kTol);

    CHECK(factoring_output_valid(15, 2, 4));
    CHECK_FALSE(factoring_output_valid(15, 2, 3));
    CHECK_THROWS_AS(shor_order_qgrm(15, 5, rng), ContractViolation);
}

TEST_CASE("removing classical equalities") {
    EqRemoveConfig cfg;
    cfg.N = 101 * 103;
    cfg.C = 10;
    cfg.trials = 1000;
    cfg.seed = 4;
    auto same = remove_classical_equalities(identity_checks_only(cfg.C), cfg);
    CHECK(same.agree == same.trials);
    CHECK(same.stripped == 2 * same.trials);

    auto rc = remove_classical_equalities(algorithms::random_collision_dl(cfg.C), cfg);
    CHECK(rc.p == 101);
    CHECK(std::abs(rc.bound - (1.0 - 144.0 / 202.0)) < 1e-12);
    CHECK(rc.pass);

    cfg.N = 1000003;
    auto big = remove_classical_equalities(algorithms::random_collision_dl(cfg.C), cfg);
    CHECK(big.agreement >= 0.99);
}
