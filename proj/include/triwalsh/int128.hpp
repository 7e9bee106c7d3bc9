#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace triwalsh {

using i128 = __int128;
using u128 = unsigned __int128;

// All grid arithmetic is exact: any operation that would wrap throws instead.
struct overflow_error : std::overflow_error {
    overflow_error() : std::overflow_error("128-bit accumulator overflow") {}
};

inline i128 add_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline i128 sub_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline i128 mul_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline i128 abs128(i128 a) { return a < 0 ? -a : a; }

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
    char buf[64];
    int pos = 64;
    while (u) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    std::string s;
    if (neg) s.push_back('-');
    s.append(buf + pos, buf + 64);
    return s;
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
        v = add_checked(mul_checked(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace triwalsh
