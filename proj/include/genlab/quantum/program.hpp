#pragma once

#include "genlab/quantum/gates.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace genlab::quantum {

struct RegisterDecl {
    std::string name;
    RegKind kind = RegKind::Qubit;
    std::size_t dim = 0;  // qudits only
    std::size_t init = 0;
};

enum class Instr {
    H, X, Qft, Iqft,          // qubit gates
    Op, Inv, Eq,              // element gates; t/w set for the (t,w) form
    Add, Sub, ProdAdd, TestInv, InvAdd, RingEq,
    Label,                    // classical labeling from `qubits` or from `value`
    Alloc,                    // new register holding `value`
    Discard,                  // drop a register in a definite state
    Measure,
};

struct Instruction {
    Instr kind = Instr::H;
    std::vector<std::string> targets;  // H, X, Qft, Iqft, Measure, Label qubits
    std::string control, x, y, z, t, w;
    std::vector<std::string> xs, ys;
    std::string name;  // Label / Alloc / Discard
    RegKind reg_kind = RegKind::Element;
    std::size_t value = 0;
    bool from_value = false;
};

struct Program {
    std::string model = "group";  // group | ring
    u64 modulus = 0;
    std::size_t cap = kDefaultCap;
    std::vector<RegisterDecl> registers;
    std::vector<Instruction> gates;

    // Builder helpers.
    void reg(std::string name, RegKind kind, std::size_t init = 0, std::size_t dim = 0);
    void h(std::string q);
    void x(std::string q);
    void qft(std::vector<std::string> qs, bool inverse = false);
    void element(ElementGate g, std::string b, std::string x, std::string y);
    void element_tw(ElementGate g, std::string b, std::string t, std::string w, std::vector<std::string> xs,
                    std::vector<std::string> ys);
    void ring(RingGate g, std::string b, std::string x, std::string y, std::string z = {});
    void label(std::string name, std::size_t value);
    void alloc(std::string name, std::size_t value);
    void discard(std::string name);
};

Program program_from_json(const std::string& text);
std::string program_to_json(const Program& p);

// Alice holds element/ring registers, Bob the rest. Each quantum element gate
// ships Bob's operand registers (B, T, W) to Alice and back.
struct DelegationTally {
    u64 quantum_gates = 0;     // Q
    u64 quantum_equalities = 0;
    u64 classical_gates = 0;   // element gates whose operands were all definite
    u64 qubits_to_alice = 0;   // sum of ceil(log2(2tw)) over quantum gates
    u64 qubits_to_bob = 0;
    double log2_dims = 0;      // sum of log2(2tw) over quantum gates
    u64 classical_bits = 0;

    // 2 * sum log2(2tw) >= log2|M| + log2(eps)
    bool communication_ok(double log2_messages, double eps) const;
};

enum class RunMode { Monolithic, Delegated };

struct RunResult {
    QState state;  // qubit and qudit registers plus entangled element / ring registers
    DelegationTally tally;
    std::vector<std::size_t> measurements;  // Measure and Label outcomes in order
    std::vector<std::pair<std::string, std::size_t>> held;  // element / ring registers in a definite state
};

// Every declared register in its initial basis state.
QState initial_state(const Program& p);
RunResult run_program(const Program& p, RunMode mode, Rng& rng);

}  // namespace genlab::quantum
