#pragma once

#include <cstdint>
#include <vector>

#include "triwalsh/grid.hpp"

namespace triwalsh {

// Smallest resolution on which a kernel with Walsh indices < n is constant per cell.
int min_resolution(Nat n);

// Row of Walsh signs w_n over all cells at resolution m.
std::vector<i128> walsh_row(u128 n, int m);

// D_0..D_N as raw value rows at resolution m (integer valued).
std::vector<std::vector<i128>> dirichlet_table(std::uint64_t N, int m);

// Every kernel comes in two independent constructions: the defining sum and a
// spectral one. Each is the other's oracle; tests hold them equal cell by cell.

Grid1D dirichlet(Nat n, int m);           // D_n = sum_{k<n} w_k, evaluated per cell
Grid1D dirichlet_spectral(Nat n, int m);  // inverse transform of the index indicator
Grid1D dirichlet_formula(Nat n, int m);   // w_n(x) sum_i n_i r_i(x) D_{2^i}(x)

Grid1D fejer(Nat n, int m);           // values n*K_n, denominator n
Grid1D fejer_spectral(Nat n, int m);  // coefficient j of n*K_n is max(0, n-1-j)

Grid2D tri_dirichlet(Nat k, int m);  // D_k^tri, direct double sum
Grid2D tri_dirichlet_spectral(Nat k, int m);

Grid2D tri_fejer(Nat n, int m);         // values n*K_n^tri, denominator n; spectral counting
Grid2D tri_fejer_direct(Nat n, int m);  // sum_{i=1}^{n-1} D_i (x) D_{n-i}

Grid2D marcinkiewicz(Nat n, int m);  // values n*M_n, denominator n; spectral counting
Grid2D marcinkiewicz_direct(Nat n, int m);

}  // namespace triwalsh
