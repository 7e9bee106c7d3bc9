#pragma once

#include <cstddef>
#include <vector>

#include "triwalsh/int128.hpp"
#include "triwalsh/rational.hpp"

namespace triwalsh {

inline i128 fwht_add(i128 a, i128 b) { return add_checked(a, b); }
inline i128 fwht_sub(i128 a, i128 b) { return sub_checked(a, b); }
inline BigInt fwht_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt fwht_sub(const BigInt& a, const BigInt& b) { return a - b; }

// Unnormalized Walsh-Hadamard transform in Hadamard (XOR) order:
// out[j] = sum_i in[i] * (-1)^{popcount(i & j)}. Self-inverse up to 2^m.
template <class Int>
void fwht_in_place(Int* a, std::size_t n) {
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t block = 0; block < n; block += half << 1) {
            for (std::size_t i = block; i < block + half; ++i) {
                Int u = a[i];
                Int v = a[i + half];
                a[i] = fwht_add(u, v);
                a[i + half] = fwht_sub(u, v);
            }
        }
    }
}

template <class Int>
void fwht_in_place(std::vector<Int>& a) {
    fwht_in_place(a.data(), a.size());
}

// Reorders Hadamard-indexed data into Paley (digit) indexing and back.
// The Paley pairing matches coefficient digit n_k with point digit x_k, which
// sits at bit (m-1-k) of the cell index, so the two orders differ by a
// bit reversal of the index.
template <class T>
void bit_reverse_permute(std::vector<T>& a, int m) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < m; ++b) r |= ((i >> b) & 1) << (m - 1 - b);
        if (r > i) std::swap(a[i], a[r]);
    }
}

}  // namespace triwalsh
