#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "triwalsh/int128.hpp"

namespace triwalsh {

// Nonnegative integer viewed through its binary digits n = sum n_j 2^j.
class Nat {
  public:
    constexpr Nat() : v_(0) {}
    constexpr Nat(u128 v) : v_(v) {}
    constexpr Nat(std::uint64_t v) : v_(v) {}
    Nat(int v) : v_(0) {
        if (v < 0) throw std::domain_error("Nat from negative");
        v_ = u128(v);
    }

    constexpr u128 value() const { return v_; }
    constexpr std::uint64_t u64() const { return std::uint64_t(v_); }
    constexpr int bit(int i) const { return i < 128 ? int((v_ >> i) & 1) : 0; }

    friend constexpr bool operator==(Nat a, Nat b) { return a.v_ == b.v_; }
    friend constexpr bool operator<(Nat a, Nat b) { return a.v_ < b.v_; }

  private:
    u128 v_;
};

// k (+) n, digitwise addition mod 2.
inline Nat dyadic_add(Nat a, Nat b) { return Nat(a.value() ^ b.value()); }

// n_(k): digits 0..k kept.
inline Nat low_part(Nat n, int k) {
    if (k < 0) throw std::domain_error("low_part: k < 0");
    if (k >= 127) return n;
    u128 mask = (u128(1) << (k + 1)) - 1;
    return Nat(n.value() & mask);
}

// n^(k): digits >= k kept.
inline Nat high_part(Nat n, int k) {
    if (k < 0) throw std::domain_error("high_part: k < 0");
    if (k == 0) return n;
    if (k >= 128) return Nat(0);
    u128 mask = (u128(1) << k) - 1;
    return Nat(n.value() & ~mask);
}

// |n|, the index of the highest nonzero digit; 2^|n| <= n < 2^|n|+1.
inline int order(Nat n) {
    if (n.value() == 0) throw std::domain_error("order(0) is undefined");
    u128 v = n.value();
    std::uint64_t hi = std::uint64_t(v >> 64);
    if (hi) return 127 - std::countl_zero(hi);
    return 63 - std::countl_zero(std::uint64_t(v));
}

// A point of I = [0,1) at finite resolution: x = cell / 2^m,
// digit x_i (i < m) is bit (m-1-i) of cell. Digits at i >= m are zero,
// matching the expansion that terminates in zeros.
struct DyadicPoint {
    int resolution = 0;
    std::uint64_t cell = 0;

    DyadicPoint() = default;
    DyadicPoint(int m, std::uint64_t c) : resolution(m), cell(c) {
        if (m < 0 || m > 63) throw std::domain_error("DyadicPoint: resolution out of range");
        if (c >= (std::uint64_t(1) << m)) throw std::domain_error("DyadicPoint: cell >= 2^m");
    }

    int digit(int i) const {
        if (i < 0) throw std::domain_error("DyadicPoint: negative digit index");
        if (i >= resolution) return 0;
        return int((cell >> (resolution - 1 - i)) & 1);
    }
};

// e_i = 1/2^(i+1): digit i is one, the rest are zero.
inline DyadicPoint unit_point(int i, int resolution) {
    if (i >= resolution) throw std::domain_error("unit_point: i >= resolution");
    return DyadicPoint(resolution, std::uint64_t(1) << (resolution - 1 - i));
}

inline DyadicPoint dyadic_add(DyadicPoint a, DyadicPoint b) {
    if (a.resolution != b.resolution) throw std::domain_error("dyadic_add: resolution mismatch");
    return DyadicPoint(a.resolution, a.cell ^ b.cell);
}

// r_i(x) = (-1)^{x_i}. Digits beyond the resolution are zero, so the value is +1 there.
inline int rademacher(int i, DyadicPoint x) { return x.digit(i) == 0 ? 1 : -1; }

// Reverse the low m bits of c.
inline std::uint64_t bit_reverse(std::uint64_t c, int m) {
    std::uint64_t r = 0;
    for (int b = 0; b < m; ++b) r |= ((c >> b) & 1) << (m - 1 - b);
    return r;
}

// Walsh-Paley sign at a raw cell index: w_n(cell/2^m) = (-1)^{sum n_k x_k}.
// Callers in hot loops use this; the digit pairing is n_k against bit (m-1-k) of cell.
inline int walsh_sign(u128 n, std::uint64_t cell, int m) {
    std::uint64_t y = bit_reverse(cell, m);
    return (std::popcount(std::uint64_t(n) & y) & 1) ? -1 : 1;
}

inline int walsh(Nat n, DyadicPoint x) {
    if (n.value() != 0 && order(n) >= x.resolution)
        throw std::domain_error("walsh: resolution too small for index (grid sized too small)");
    return walsh_sign(n.value(), x.cell, x.resolution);
}

// I_n(c): points sharing the first n digits with the center.
struct DyadicInterval {
    int order = 0;
    DyadicPoint center;

    DyadicInterval(int n, DyadicPoint c) : order(n), center(c) {
        if (n < 0 || n > c.resolution) throw std::domain_error("DyadicInterval: order out of range");
    }

    bool contains(DyadicPoint y) const {
        for (int i = 0; i < order; ++i)
            if (y.digit(i) != center.digit(i)) return false;
        return true;
    }
};

}  // namespace triwalsh
