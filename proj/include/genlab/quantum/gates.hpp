#pragma once

#include "genlab/quantum/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace genlab::quantum {

enum class ElementGate { Op, Inv, Eq };
enum class RingGate { Add, Sub, ProdAdd, TestInv, InvAdd, Eq };

const char* element_gate_name(ElementGate g);
const char* ring_gate_name(RingGate g);

// Basic form: control qubit b, element registers x and y.
void apply_element_gate(QState& s, ElementGate g, std::size_t b, std::size_t x, std::size_t y);

// (t,w) form: index registers t and w (qudits of dimension xs.size(), ys.size()).
// Branches where X_i and Y_j are the same register are left alone.
void apply_element_gate_tw(QState& s, ElementGate g, std::size_t b, std::size_t t, std::size_t w,
                           const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys);

struct RingOperands {
    std::size_t b = 0;  // control qubit; for TestInv the target qubit
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;  // ProdAdd / InvAdd only
};

// InvAdd appends an ancilla qubit, runs TestInv / controlled add / TestInv, and
// discards the ancilla.
void apply_ring_gate(QState& s, RingGate g, const RingOperands& r);

// Dense unitary on non-element registers (combined index, first register most significant).
void apply_unitary(QState& s, const std::vector<std::size_t>& regs, const std::vector<Amp>& matrix);

void hadamard(QState& s, std::size_t qubit);
void pauli_x(QState& s, std::size_t qubit);
// Fourier transform over the qubits read as one integer, first register most significant.
void qft(QState& s, const std::vector<std::size_t>& qubits, bool inverse = false);
std::vector<Amp> qft_matrix(std::size_t dim, bool inverse);

struct LabelResult {
    u64 value = 0;
    bool bottom = false;
    std::size_t reg = 0;  // index of the appended register
};

// Measures the qubits (first register most significant), reads them as an
// integer and appends a register holding it, or ⊥ when the value is >= N.
LabelResult classical_label_measure(QState& s, const std::vector<std::size_t>& qubits, const std::string& name,
                                    Rng& rng, RegKind kind = RegKind::Element);

}  // namespace genlab::quantum
