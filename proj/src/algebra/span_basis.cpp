#include "genlab/algebra/span_basis.hpp"

#include "genlab/common/error.hpp"

#include <algorithm>
#include <tuple>

namespace genlab::algebra {

std::vector<std::size_t> pivot_order(std::size_t width) {
    std::vector<std::size_t> order;
    for (std::size_t c = 1; c < width; ++c) order.push_back(c);
    order.push_back(0);
    return order;
}

SpanBasisModP::SpanBasisModP(u64 p, std::size_t nvars) : p_(p), width_(nvars + 1) {
    require(is_prime_u64(p), "SpanBasisModP: modulus must be prime");
}

std::size_t SpanBasisModP::rank_of(std::size_t column) const { return column == 0 ? width_ - 1 : column - 1; }

void SpanBasisModP::check(const LinPolyModN& poly) const {
    require(poly.modulus() == p_, "SpanBasisModP: modulus mismatch");
    require(poly.width() == width_, "SpanBasisModP: dimension mismatch");
}

std::vector<u64> SpanBasisModP::reduce(const LinPolyModN& poly) const {
    check(poly);
    std::vector<u64> v = poly.coeffs();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = v[pivots_[i]];
        if (!f) continue;
        for (std::size_t c = 0; c < width_; ++c) v[c] = sub_mod(v[c], mul_mod(f, rows_[i][c], p_), p_);
    }
    return v;
}

bool SpanBasisModP::contains(const LinPolyModN& poly) const {
    auto v = reduce(poly);
    return std::all_of(v.begin(), v.end(), [](u64 c) { return c == 0; });
}

bool SpanBasisModP::insert(const LinPolyModN& poly) {
    auto v = reduce(poly);
    std::size_t lead = width_;
    for (std::size_t c : pivot_order(width_)) {
        if (v[c]) {
            lead = c;
            break;
        }
    }
    if (lead == width_) return false;
    u64 inv = inv_mod_checked(v[lead], p_);
    for (auto& c : v) c = mul_mod(c, inv, p_);
    for (auto& row : rows_) {
        u64 f = row[lead];
        if (!f) continue;
        for (std::size_t c = 0; c < width_; ++c) row[c] = sub_mod(row[c], mul_mod(f, v[c], p_), p_);
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && rank_of(pivots_[pos]) < rank_of(lead)) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    return true;
}

std::vector<std::size_t> SpanBasisModP::free_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 1; c < width_; ++c)
        if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) out.push_back(c);
    return out;
}

bool SpanBasisModP::well_formed() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i > 0 && rank_of(pivots_[i]) <= rank_of(pivots_[i - 1])) return false;
        if (rows_[i][pivots_[i]] != 1) return false;
        for (std::size_t c : pivot_order(width_)) {
            if (c == pivots_[i]) break;
            if (rows_[i][c]) return false;
        }
        for (std::size_t j = 0; j < rows_.size(); ++j)
            if (j != i && rows_[j][pivots_[i]]) return false;
    }
    return true;
}

namespace {

// g = s a + t b with g = gcd(a, b) > 0
std::tuple<BigInt, BigInt, BigInt> egcd(const BigInt& a, const BigInt& b) {
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

SpanBasisZ::SpanBasisZ(std::size_t nvars) : width_(nvars + 1) {}

std::size_t SpanBasisZ::rank_of(std::size_t column) const { return column == 0 ? width_ - 1 : column - 1; }

void SpanBasisZ::check(const LinPolyInt& poly) const {
    require(poly.width() == width_, "SpanBasisZ: dimension mismatch");
}

std::size_t SpanBasisZ::leading(const std::vector<BigInt>& v) const {
    for (std::size_t c : pivot_order(width_))
        if (v[c] != 0) return c;
    return width_;
}

bool SpanBasisZ::contains(const LinPolyInt& poly) const {
    check(poly);
    std::vector<BigInt> w = poly.coeffs();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t c = pivots_[i];
        if (w[c] == 0) continue;
        if (w[c] % rows_[i][c] != 0) return false;
        BigInt q = w[c] / rows_[i][c];
        for (std::size_t k = 0; k < width_; ++k) w[k] -= q * rows_[i][k];
    }
    return std::all_of(w.begin(), w.end(), [](const BigInt& c) { return c == 0; });
}

bool SpanBasisZ::insert(const LinPolyInt& poly) {
    if (contains(poly)) return false;
    std::vector<BigInt> v = poly.coeffs();
    std::size_t i = 0;
    for (; i < rows_.size(); ++i) {
        std::size_t lv = leading(v);
        if (lv == width_) break;
        std::size_t c = pivots_[i];
        if (rank_of(lv) < rank_of(c)) break;
        if (lv != c) continue;
        auto& r = rows_[i];
        auto [g, s, t] = egcd(r[c], v[c]);
        BigInt rc = r[c] / g, vc = v[c] / g;
        std::vector<BigInt> nr(width_), nv(width_);
        for (std::size_t k = 0; k < width_; ++k) {
            nr[k] = s * r[k] + t * v[k];
            nv[k] = rc * v[k] - vc * r[k];
        }
        r = std::move(nr);
        v = std::move(nv);
    }
    std::size_t lv = leading(v);
    if (lv != width_) {
        std::size_t pos = 0;
        while (pos < pivots_.size() && rank_of(pivots_[pos]) < rank_of(lv)) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lv);
    }
    normalize();
    return true;
}

void SpanBasisZ::normalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][pivots_[i]] < 0)
            for (auto& e : rows_[i]) e = -e;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = i + 1; j < rows_.size(); ++j) {
            std::size_t c = pivots_[j];
            BigInt q = floor_div(rows_[i][c], rows_[j][c]);
            if (q == 0) continue;
            for (std::size_t k = 0; k < width_; ++k) rows_[i][k] -= q * rows_[j][k];
        }
    }
}

bool SpanBasisZ::well_formed() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i > 0 && rank_of(pivots_[i]) <= rank_of(pivots_[i - 1])) return false;
        if (leading(rows_[i]) != pivots_[i]) return false;
        if (rows_[i][pivots_[i]] <= 0) return false;
        for (std::size_t j = 0; j < i; ++j) {
            const BigInt& e = rows_[j][pivots_[i]];
            if (e < 0 || e >= rows_[i][pivots_[i]]) return false;
        }
    }
    return true;
}

std::vector<u64> solve_square_system_mod(const std::vector<LinPolyModN>& equations, u64 p) {
    std::size_t m = equations.size();
    SpanBasisModP basis(p, m);
    for (const auto& eq : equations) {
        require(eq.nvars() == m, "solve_square_system_mod: system is not square");
        if (!basis.insert(eq)) throw NotInformative("solve_square_system_mod: dependent equations");
    }
    std::vector<u64> x(m, 0);
    for (std::size_t i = 0; i < basis.rank(); ++i) {
        std::size_t c = basis.pivot_columns()[i];
        if (c == 0) throw NotInformative("solve_square_system_mod: inconsistent system");
        x[c - 1] = neg_mod(basis.rows()[i][0], p);
    }
    return x;
}

}  // namespace genlab::algebra
