#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "triwalsh/int128.hpp"

namespace triwalsh {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt to_bigint(i128 v) {
    // cpp_int has no __int128 constructor on all boost versions; go through halves
    bool neg = v < 0;
    u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
    BigInt hi = std::uint64_t(u >> 64);
    BigInt r = (hi << 64) + std::uint64_t(u);
    return neg ? BigInt(-r) : r;
}

inline Rational make_rational(i128 num, i128 den) {
    return Rational(to_bigint(num), to_bigint(den));
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Exact decimal rendering (truncated toward zero), used only for display columns.
inline std::string decimal_string(const Rational& q, int digits = 12) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt ip = num / den;
    BigInt rem = num % den;
    std::string s = (neg && (ip != 0 || rem != 0)) ? "-" : "";
    s += ip.str();
    s.push_back('.');
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        s += BigInt(rem / den).str();
        rem %= den;
    }
    return s;
}

}  // namespace triwalsh
