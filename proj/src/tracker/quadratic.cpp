#include "genlab/tracker/quadratic.hpp"

#include "genlab/common/error.hpp"

#include <utility>

namespace genlab::tracker {

using algebra::add_mod;
using algebra::mul_mod;
using algebra::sub_mod;

QuadPolyModN::QuadPolyModN(u64 modulus, std::size_t nvars)
    : modulus_(modulus), width_(nvars + 1), c_(width_ * width_, 0) {}

u64& QuadPolyModN::ref(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return c_[i * width_ + j];
}

u64 QuadPolyModN::at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return c_[i * width_ + j];
}

QuadPolyModN QuadPolyModN::ddh_relation(const LinPolyModN& a, const LinPolyModN& b, const LinPolyModN& c) {
    require(a.modulus() == b.modulus() && b.modulus() == c.modulus(), "ddh_relation: modulus mismatch");
    require(a.width() == b.width() && b.width() == c.width(), "ddh_relation: dimension mismatch");
    u64 n = a.modulus();
    QuadPolyModN q(n, a.nvars());
    for (std::size_t i = 0; i < a.width(); ++i)
        for (std::size_t j = 0; j < b.width(); ++j) {
            u64& slot = q.ref(i, j);
            slot = add_mod(slot, mul_mod(a[i], b[j], n), n);
        }
    for (std::size_t i = 0; i < c.width(); ++i) {
        u64& slot = q.ref(0, i);
        slot = sub_mod(slot, c[i], n);
    }
    return q;
}

bool QuadPolyModN::is_zero() const {
    for (u64 v : c_)
        if (v) return false;
    return true;
}

bool QuadPolyModN::is_linear() const {
    for (std::size_t i = 1; i < width_; ++i)
        for (std::size_t j = i; j < width_; ++j)
            if (at(i, j)) return false;
    return true;
}

LinPolyModN QuadPolyModN::linear_part() const {
    std::vector<u64> v(width_);
    for (std::size_t j = 0; j < width_; ++j) v[j] = at(0, j);
    return LinPolyModN(modulus_, v);
}

u64 QuadPolyModN::eval(const std::vector<u64>& x) const {
    require(x.size() + 1 == width_, "QuadPolyModN::eval: wrong number of values");
    auto m = [&](std::size_t i) { return i == 0 ? u64(1) % modulus_ : x[i - 1] % modulus_; };
    u64 acc = 0;
    for (std::size_t i = 0; i < width_; ++i)
        for (std::size_t j = i; j < width_; ++j)
            if (at(i, j)) acc = add_mod(acc, mul_mod(at(i, j), mul_mod(m(i), m(j), modulus_), modulus_), modulus_);
    return acc;
}

std::vector<u64> QuadPolyModN::restrict_to(std::size_t keep, const std::vector<u64>& values) const {
    require(values.size() + 1 == width_, "restrict_to: wrong number of values");
    require(keep >= 1 && keep < width_, "restrict_to: variable out of range");
    std::vector<u64> out(3, 0);
    auto val = [&](std::size_t i) { return i == 0 ? u64(1) % modulus_ : values[i - 1] % modulus_; };
    for (std::size_t i = 0; i < width_; ++i)
        for (std::size_t j = i; j < width_; ++j) {
            u64 c = at(i, j);
            if (!c) continue;
            int deg = (i == keep) + (j == keep);
            u64 k = c;
            if (i != keep) k = mul_mod(k, val(i), modulus_);
            if (j != keep) k = mul_mod(k, val(j), modulus_);
            out[2 - deg] = add_mod(out[2 - deg], k, modulus_);
        }
    return out;  // c2, c1, c0
}

}  // namespace genlab::tracker
