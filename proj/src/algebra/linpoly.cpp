#include "genlab/algebra/linpoly.hpp"

#include "genlab/common/error.hpp"

#include <sstream>

namespace genlab::algebra {

LinPolyModN::LinPolyModN(u64 modulus, std::vector<u64> coeffs) : modulus_(modulus), coeffs_(std::move(coeffs)) {
    require(modulus_ >= 1, "LinPolyModN: modulus must be positive");
    require(!coeffs_.empty(), "LinPolyModN: missing constant coefficient");
    for (auto& c : coeffs_) c %= modulus_;
}

LinPolyModN LinPolyModN::zero(u64 modulus, std::size_t nvars) {
    return LinPolyModN(modulus, std::vector<u64>(nvars + 1, 0));
}

LinPolyModN LinPolyModN::constant(u64 modulus, std::size_t nvars, u64 value) {
    auto p = zero(modulus, nvars);
    p.coeffs_[0] = value % modulus;
    return p;
}

LinPolyModN LinPolyModN::variable(u64 modulus, std::size_t nvars, std::size_t index) {
    require(index >= 1 && index <= nvars, "LinPolyModN: variable index out of range");
    auto p = zero(modulus, nvars);
    p.coeffs_[index] = 1 % modulus;
    return p;
}

bool LinPolyModN::is_zero() const {
    for (u64 c : coeffs_)
        if (c) return false;
    return true;
}

bool LinPolyModN::is_constant() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i]) return false;
    return true;
}

void LinPolyModN::check_compatible(const LinPolyModN& o) const {
    require(modulus_ == o.modulus_ && coeffs_.size() == o.coeffs_.size(),
            "LinPolyModN: modulus or variable count mismatch");
}

LinPolyModN LinPolyModN::operator+(const LinPolyModN& o) const {
    check_compatible(o);
    LinPolyModN r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = add_mod(coeffs_[i], o.coeffs_[i], modulus_);
    return r;
}

LinPolyModN LinPolyModN::operator-(const LinPolyModN& o) const {
    check_compatible(o);
    LinPolyModN r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = sub_mod(coeffs_[i], o.coeffs_[i], modulus_);
    return r;
}

LinPolyModN LinPolyModN::operator-() const {
    LinPolyModN r = *this;
    for (auto& c : r.coeffs_) c = neg_mod(c, modulus_);
    return r;
}

LinPolyModN LinPolyModN::scaled(u64 k) const {
    LinPolyModN r = *this;
    k %= modulus_;
    for (auto& c : r.coeffs_) c = mul_mod(c, k, modulus_);
    return r;
}

u64 LinPolyModN::eval(const std::vector<u64>& x) const {
    require(x.size() == nvars(), "LinPolyModN::eval: wrong number of values");
    u64 acc = coeffs_[0];
    for (std::size_t i = 0; i < x.size(); ++i) acc = add_mod(acc, mul_mod(coeffs_[i + 1], x[i] % modulus_, modulus_), modulus_);
    return acc;
}

std::string LinPolyModN::str() const {
    std::ostringstream os;
    os << coeffs_[0];
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i]) os << " + " << coeffs_[i] << "*X" << i;
    os << " (mod " << modulus_ << ")";
    return os.str();
}

LinPolyInt::LinPolyInt(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "LinPolyInt: missing constant coefficient");
}

LinPolyInt LinPolyInt::zero(std::size_t nvars) { return LinPolyInt(std::vector<BigInt>(nvars + 1, BigInt(0))); }

LinPolyInt LinPolyInt::constant(std::size_t nvars, const BigInt& value) {
    auto p = zero(nvars);
    p.coeffs_[0] = value;
    return p;
}

LinPolyInt LinPolyInt::variable(std::size_t nvars, std::size_t index) {
    require(index >= 1 && index <= nvars, "LinPolyInt: variable index out of range");
    auto p = zero(nvars);
    p.coeffs_[index] = 1;
    return p;
}

bool LinPolyInt::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

BigInt LinPolyInt::max_abs() const {
    BigInt m = 0;
    for (const auto& c : coeffs_) {
        BigInt a = abs_big(c);
        if (a > m) m = a;
    }
    return m;
}

void LinPolyInt::check_compatible(const LinPolyInt& o) const {
    require(coeffs_.size() == o.coeffs_.size(), "LinPolyInt: variable count mismatch");
}

LinPolyInt LinPolyInt::operator+(const LinPolyInt& o) const {
    check_compatible(o);
    LinPolyInt r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

LinPolyInt LinPolyInt::operator-(const LinPolyInt& o) const {
    check_compatible(o);
    LinPolyInt r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

LinPolyInt LinPolyInt::operator-() const {
    LinPolyInt r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

BigInt LinPolyInt::eval(const std::vector<BigInt>& x) const {
    require(x.size() == nvars(), "LinPolyInt::eval: wrong number of values");
    BigInt acc = coeffs_[0];
    for (std::size_t i = 0; i < x.size(); ++i) acc += coeffs_[i + 1] * x[i];
    return acc;
}

LinPolyModN LinPolyInt::reduce_mod(u64 n) const {
    std::vector<u64> out(coeffs_.size());
    BigInt bn = n;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        BigInt r = coeffs_[i] % bn;
        if (r < 0) r += bn;
        out[i] = static_cast<u64>(r);
    }
    return LinPolyModN(n, std::move(out));
}

std::string LinPolyInt::str() const {
    std::ostringstream os;
    os << coeffs_[0];
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) os << " + " << coeffs_[i] << "*X" << i;
    return os.str();
}

}  // namespace genlab::algebra
