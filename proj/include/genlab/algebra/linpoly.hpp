#pragma once

#include "genlab/algebra/modular.hpp"
#include "genlab/common/bigint.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace genlab::algebra {

// b + a1 X1 + ... + at Xt over Z_N; coeffs[0] = b.
class LinPolyModN {
public:
    LinPolyModN() = default;
    LinPolyModN(u64 modulus, std::vector<u64> coeffs);

    static LinPolyModN zero(u64 modulus, std::size_t nvars);
    static LinPolyModN constant(u64 modulus, std::size_t nvars, u64 value);
    static LinPolyModN variable(u64 modulus, std::size_t nvars, std::size_t index);  // index in 1..nvars

    u64 modulus() const { return modulus_; }
    std::size_t nvars() const { return coeffs_.size() - 1; }
    std::size_t width() const { return coeffs_.size(); }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    u64 operator[](std::size_t i) const { return coeffs_[i]; }
    u64 constant_term() const { return coeffs_[0]; }

    bool is_zero() const;
    bool is_constant() const;

    LinPolyModN operator+(const LinPolyModN& o) const;
    LinPolyModN operator-(const LinPolyModN& o) const;
    LinPolyModN operator-() const;
    LinPolyModN scaled(u64 k) const;
    LinPolyModN combine(const LinPolyModN& o, bool subtract) const { return subtract ? *this - o : *this + o; }

    u64 eval(const std::vector<u64>& x) const;  // x[0..t-1]

    bool operator==(const LinPolyModN& o) const = default;

    std::string str() const;

private:
    void check_compatible(const LinPolyModN& o) const;

    u64 modulus_ = 1;
    std::vector<u64> coeffs_{0};
};

class LinPolyInt {
public:
    LinPolyInt() = default;
    explicit LinPolyInt(std::vector<BigInt> coeffs);

    static LinPolyInt zero(std::size_t nvars);
    static LinPolyInt constant(std::size_t nvars, const BigInt& value);
    static LinPolyInt variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return coeffs_.size() - 1; }
    std::size_t width() const { return coeffs_.size(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_zero() const;
    BigInt max_abs() const;

    LinPolyInt operator+(const LinPolyInt& o) const;
    LinPolyInt operator-(const LinPolyInt& o) const;
    LinPolyInt operator-() const;
    LinPolyInt combine(const LinPolyInt& o, bool subtract) const { return subtract ? *this - o : *this + o; }

    BigInt eval(const std::vector<BigInt>& x) const;
    LinPolyModN reduce_mod(u64 n) const;

    bool operator==(const LinPolyInt& o) const = default;

    std::string str() const;

private:
    void check_compatible(const LinPolyInt& o) const;

    std::vector<BigInt> coeffs_{BigInt(0)};
};

}  // namespace genlab::algebra
