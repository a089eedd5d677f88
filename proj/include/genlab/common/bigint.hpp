#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace genlab {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// floor(log2 |v|) + 1, zero for v == 0
inline unsigned bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(abs_big(v))) + 1;
}

}  // namespace genlab
