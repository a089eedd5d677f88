#pragma once

#include "genlab/common/bigint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace genlab::codecs {

enum class CodecKind { Dl, Mdl, GapDl, GapCdh, Omdl, Order, Rsa, RsaTwo };
const char* codec_name(CodecKind k);

// A codeword is either ⊥ or a tuple of digits, digit i in [0, radix_i).
struct Encoding {
    CodecKind kind = CodecKind::Dl;
    bool bottom = true;
    std::vector<BigInt> digits;

    static Encoding none(CodecKind k) { return {k, true, {}}; }
    static Encoding of(CodecKind k, std::vector<BigInt> d) { return {k, false, std::move(d)}; }
};

// Mixed-radix codeword space with one extra point for ⊥ (codeword 0).
class CodeSpace {
public:
    explicit CodeSpace(std::vector<BigInt> radices);

    const std::vector<BigInt>& radices() const { return radices_; }
    BigInt size() const;           // product of radices + 1
    double log2_size() const;      // log2 size()
    unsigned bits() const;         // ceil(log2 size())

    BigInt pack(const Encoding& e) const;
    Encoding unpack(CodecKind kind, const BigInt& word) const;

private:
    std::vector<BigInt> radices_;
};

double log2_big(const BigInt& x);
BigInt binomial(std::uint64_t n, std::uint64_t k);

// Rank of a strictly increasing k-subset of [0, n) among all k-subsets, and back.
BigInt subset_rank(const std::vector<std::uint64_t>& sorted);
std::vector<std::uint64_t> subset_unrank(BigInt rank, std::size_t k);

}  // namespace genlab::codecs
