#pragma once

#include "genlab/algebra/linpoly.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace genlab::tracker {

using algebra::LinPolyModN;
using algebra::u64;

// Degree-2 polynomial over Z_N in monomials m_i m_j (i <= j, m_0 = 1).
class QuadPolyModN {
public:
    QuadPolyModN(u64 modulus, std::size_t nvars);

    // A * B - C
    static QuadPolyModN ddh_relation(const LinPolyModN& a, const LinPolyModN& b, const LinPolyModN& c);

    u64 modulus() const { return modulus_; }
    std::size_t nvars() const { return width_ - 1; }
    u64 at(std::size_t i, std::size_t j) const;

    bool is_zero() const;
    bool is_linear() const;             // no monomial of degree 2
    LinPolyModN linear_part() const;    // valid when is_linear()
    u64 eval(const std::vector<u64>& x) const;

    // Substitute every variable except `keep` by the given values (1-based index),
    // returning (c2, c1, c0) of the univariate result.
    std::vector<u64> restrict_to(std::size_t keep, const std::vector<u64>& values) const;

private:
    u64& ref(std::size_t i, std::size_t j);

    u64 modulus_;
    std::size_t width_;
    std::vector<u64> c_;  // width x width, upper triangle used
};

}  // namespace genlab::tracker
