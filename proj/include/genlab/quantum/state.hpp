#pragma once

#include "genlab/common/rng.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace genlab::quantum {

using u64 = std::uint64_t;
using Amp = std::complex<double>;

enum class RegKind { Qubit, Qudit, Element, Ring };

const char* reg_kind_name(RegKind k);
RegKind parse_reg_kind(const std::string& s);

struct Register {
    std::string name;
    RegKind kind = RegKind::Qubit;
    std::size_t dim = 2;
};

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 22;

// Registers in order; register 0 is the most significant digit of a basis index.
// Element and ring registers have dimension N + 1 with N standing for ⊥.
class RegisterLayout {
public:
    explicit RegisterLayout(u64 modulus, std::size_t cap = kDefaultCap);

    u64 modulus() const { return modulus_; }
    u64 bottom() const { return modulus_; }
    std::size_t cap() const { return cap_; }

    std::size_t size() const { return regs_.size(); }
    const Register& operator[](std::size_t i) const { return regs_[i]; }
    const std::vector<Register>& registers() const { return regs_; }

    std::size_t total() const { return total_; }
    std::size_t stride(std::size_t i) const { return strides_[i]; }
    std::size_t digit(std::size_t index, std::size_t reg) const { return (index / strides_[reg]) % regs_[reg].dim; }

    std::size_t find(const std::string& name) const;  // throws ContractViolation when absent
    bool contains(const std::string& name) const;

    // Dimension that adding a register of this kind would have.
    std::size_t dim_of(RegKind kind, std::size_t qudit_dim = 0) const;

    std::size_t append(Register r);  // throws ConfigError past the cap
    void erase(std::size_t i);
    void reorder(const std::vector<std::size_t>& order);

private:
    void rebuild();

    u64 modulus_;
    std::size_t cap_;
    std::vector<Register> regs_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

class QState {
public:
    explicit QState(RegisterLayout layout);  // |0...0>

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<Amp>& amplitudes() const { return amp_; }
    std::vector<Amp>& amplitudes() { return amp_; }

    std::size_t reg(const std::string& name) const { return layout_.find(name); }

    // Sets the state to a single basis vector given one value per register.
    void set_basis(const std::vector<std::size_t>& digits);
    std::size_t index_of(const std::vector<std::size_t>& digits) const;

    // Appends a register in basis state `value`.
    std::size_t append(Register r, std::size_t value);
    // Removes a register that is in a definite basis state; throws otherwise.
    void discard(std::size_t reg);
    // Moves registers into the given order (a permutation of indices).
    void reorder(const std::vector<std::size_t>& order);
    void reorder_by_name(const std::vector<std::string>& names);

    double norm() const;

    // Value of the register if every branch with weight agrees on it.
    std::optional<std::size_t> definite(std::size_t reg) const;

    // Probability of each combined value of regs (first register most significant).
    std::vector<double> marginal(const std::vector<std::size_t>& regs) const;

    // Measures regs in the computational basis; returns the combined value.
    std::size_t measure(const std::vector<std::size_t>& regs, Rng& rng);

    // out[f(i)] = in[i]; f must be a bijection on basis indices.
    void permute(const std::function<std::size_t(std::size_t)>& f);

private:
    RegisterLayout layout_;
    std::vector<Amp> amp_;
};

// Largest |a_i - b_i| after matching registers by name.
double max_deviation(const QState& a, const QState& b);

}  // namespace genlab::quantum
