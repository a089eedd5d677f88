#include "genlab/codecs/encoding.hpp"

#include "genlab/common/error.hpp"

#include <cmath>

namespace genlab::codecs {

const char* codec_name(CodecKind k) {
    switch (k) {
        case CodecKind::Dl: return "dl";
        case CodecKind::Mdl: return "mdl";
        case CodecKind::GapDl: return "gap-dl";
        case CodecKind::GapCdh: return "gap-cdh";
        case CodecKind::Omdl: return "omdl";
        case CodecKind::Order: return "order";
        case CodecKind::Rsa: return "rsa";
        case CodecKind::RsaTwo: return "rsa-two";
    }
    return "?";
}

double log2_big(const BigInt& x) {
    require(x > 0, "log2 of a non-positive integer");
    unsigned bits = bit_length(x);
    if (bits <= 60) return std::log2(static_cast<double>(x));
    BigInt top = x >> (bits - 60);
    return std::log2(static_cast<double>(top)) + static_cast<double>(bits - 60);
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt subset_rank(const std::vector<std::uint64_t>& sorted) {
    BigInt r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        require(i == 0 || sorted[i] > sorted[i - 1], "subset_rank: indices must be strictly increasing");
        r += binomial(sorted[i], i + 1);
    }
    return r;
}

std::vector<std::uint64_t> subset_unrank(BigInt rank, std::size_t k) {
    std::vector<std::uint64_t> out(k);
    for (std::size_t i = k; i-- > 0;) {
        std::uint64_t c = i;
        while (binomial(c + 1, i + 1) <= rank) ++c;
        out[i] = c;
        rank -= binomial(c, i + 1);
    }
    return out;
}

CodeSpace::CodeSpace(std::vector<BigInt> radices) : radices_(std::move(radices)) {
    for (const auto& r : radices_) require(r >= 1, "code space radix must be positive");
}

BigInt CodeSpace::size() const {
    BigInt s = 1;
    for (const auto& r : radices_) s *= r;
    return s + 1;
}

double CodeSpace::log2_size() const { return log2_big(size()); }

unsigned CodeSpace::bits() const {
    BigInt s = size();
    unsigned b = bit_length(s - 1);
    return b;
}

BigInt CodeSpace::pack(const Encoding& e) const {
    if (e.bottom) return 0;
    require(e.digits.size() == radices_.size(), "encoding has the wrong number of digits");
    BigInt word = 0, scale = 1;
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        require(e.digits[i] >= 0 && e.digits[i] < radices_[i], "encoding digit out of range");
        word += e.digits[i] * scale;
        scale *= radices_[i];
    }
    return word + 1;
}

Encoding CodeSpace::unpack(CodecKind kind, const BigInt& word) const {
    require(word >= 0 && word < size(), "codeword out of range");
    if (word == 0) return Encoding::none(kind);
    BigInt rest = word - 1;
    std::vector<BigInt> digits;
    for (const auto& r : radices_) {
        digits.push_back(rest % r);
        rest /= r;
    }
    return Encoding::of(kind, std::move(digits));
}

}  // namespace genlab::codecs
