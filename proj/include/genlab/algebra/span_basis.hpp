#pragma once

#include "genlab/algebra/linpoly.hpp"

#include <cstddef>
#include <vector>

namespace genlab::algebra {

// Column priority used by both bases: variables X1..Xt first, constant last.
// A relation like X1 + X2 - 5 therefore pivots on X1.
std::vector<std::size_t> pivot_order(std::size_t width);

// Reduced row-echelon basis of a subspace of Z_p^{t+1}.
class SpanBasisModP {
public:
    SpanBasisModP() = default;
    SpanBasisModP(u64 p, std::size_t nvars);

    u64 modulus() const { return p_; }
    std::size_t nvars() const { return width_ - 1; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<u64>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

    bool contains(const LinPolyModN& poly) const;
    bool insert(const LinPolyModN& poly);

    // poly minus its projection onto the span (zero iff contained)
    std::vector<u64> reduce(const LinPolyModN& poly) const;

    LinPolyModN row_poly(std::size_t i) const { return LinPolyModN(p_, rows_[i]); }

    // Variable indices (1-based) that carry no pivot.
    std::vector<std::size_t> free_variables() const;

    // Structural self-check of the echelon invariants.
    bool well_formed() const;

private:
    void check(const LinPolyModN& poly) const;
    std::size_t rank_of(std::size_t column) const;  // position of column in pivot order

    u64 p_ = 2;
    std::size_t width_ = 1;
    std::vector<std::vector<u64>> rows_;
    std::vector<std::size_t> pivots_;
};

// Integer lattice spanned by relations, kept in Hermite normal form
// (same column priority; pivots positive; entries above a pivot reduced into [0, pivot)).
class SpanBasisZ {
public:
    SpanBasisZ() = default;
    explicit SpanBasisZ(std::size_t nvars);

    std::size_t nvars() const { return width_ - 1; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<BigInt>>& rows() const { return rows_; }

    bool contains(const LinPolyInt& poly) const;
    // Adds poly to the generating set. Returns true iff the lattice grew.
    bool insert(const LinPolyInt& poly);

    bool well_formed() const;

private:
    void check(const LinPolyInt& poly) const;
    std::size_t rank_of(std::size_t column) const;
    std::size_t leading(const std::vector<BigInt>& v) const;  // column in priority order, width_ if zero
    void normalize();

    std::size_t width_ = 1;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<std::size_t> pivots_;
};

// Unique root of m independent equations P_k(x) = 0 in m unknowns mod prime p.
// Throws NotInformative when the system is singular.
std::vector<u64> solve_square_system_mod(const std::vector<LinPolyModN>& equations, u64 p);

}  // namespace genlab::algebra
