#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "triwalsh/grid.hpp"
#include "triwalsh/ops.hpp"
#include "triwalsh/report.hpp"

namespace triwalsh {

// sup_{n<=2^A} |(1/2^A) sum_k w_k(x1) w_{k+n}(x2)|, integrated exactly over I^2.
// The statement's sup includes n = 2^A while the proof splits it off, so all
// three readings are computed: the full sup, the n = 2^A term alone (exactly
// 2^-A), and the sup restricted to n < 2^A.
struct Delta1Result {
    LemmaReport full, special, strict;
};
Delta1Result delta1_integral(int A, unsigned threads = 0);

// exact count of (n,k,l,i) in [0,2^A)^4 with (k+n)(+) (l+n)(+) (i+n) = (k(+)l(+)i)+n
std::uint64_t quadruple_count_raw(int A, unsigned threads = 0);
LemmaReport quadruple_count(int A, unsigned threads = 0);
// sum_n int |T_n|^4 = quadruple count (each surviving term contributes one)
LemmaReport quadruple_l4_identity(int A, unsigned threads = 0);

// every quadruple whose s-th aligned 4-bit block matches the excluded pattern
// must violate the carry identity; checked over all completions of the free bits
LemmaReport pattern_exclusion_check(int A, unsigned threads = 0);

LemmaReport corF_bound(int t2, int s, std::uint64_t low_bits, unsigned threads = 0);
// the F_{t^2,s} grid itself (integer values, resolution s+1)
Grid2D corF_grid(int t2, int s, std::uint64_t low_bits, unsigned threads = 0);

// sup_{n<2^s} |sum_{k<2^s} D_k(x1) D_{n+k}(x2)| on the full square, resolution s+1
Grid2D marc_sup_grid(int s, unsigned threads = 0);
LemmaReport marc_integral(int t1, int t2, int s, unsigned threads = 0);
LemmaReport marc_integral_from(const Grid2D& sup, int t1, int t2, int s);

struct B1B2 {
    Rational b1, b2, full;
};
B1B2 b1b2_decomposition(int t1, int t2, int i, int s, std::uint64_t n, std::uint64_t cell1,
                        std::uint64_t cell2);
// additivity B1 + B2 = full over every admissible (t1, t2, i), n < 2^s and cell
LemmaReport b1b2_exhaustive(int s);

// T_s(x) = sum_{k<2^s} D_{n^(s+1)+k}(x1) D_{n-(n^(s+1)+k)}(x2) for each digit n_s = 1;
// their sum tiles [0, n) and equals n*K_n^tri.
std::vector<std::pair<int, Grid2D>> kernel_decomposition_terms(Nat n, int m);

enum class SupPartVariant { low, mid, high };  // s <= t1 / t1 < s <= t2 / t2 < s <= A
LemmaReport sup_kernel_parts(int a, int t1, int t2, const std::vector<int>& A_range,
                             SupPartVariant variant, unsigned threads = 0);

// support and size of K_{2^s} on J_{t1}: zero off I_s(e_{t1}), <= C 2^{t1} on it
LemmaReport yano_check(int t1, int s);

// int_{J_{t1}} max_{2^A <= n <= N} |K_n|, against (2^{t1}/2^A)(A-t1+1)
LemmaReport mem_maximal_check(int t1, int A, std::uint64_t N, unsigned threads = 0);

// int_{I^2 \ I_a^2} max_{2^a <= n <= N} |K_n^tri|; trend over an ascending N list
LemmaReport sup_tri_kernel_integral(int a, std::uint64_t N, unsigned threads = 0);
std::vector<LemmaReport> sup_tri_kernel_trend(int a, const std::vector<std::uint64_t>& Ns,
                                              unsigned threads = 0);

Rational tri_kernel_l1(std::uint64_t n, unsigned threads = 0);
LemmaReport tri_kernel_l1_report(std::uint64_t n, unsigned threads = 0);

struct QuasiResult {
    LemmaReport vanishing;              // sigma_n^tri f = 0 for all n < 2^a
    std::vector<LemmaReport> ratios;    // truncated outside integral / ||f||_1, per N
    Rational f_l1 = 0;
};
QuasiResult quasi_locality_check(const TestFunction& f, int a, const std::vector<std::uint64_t>& Ns,
                                 unsigned threads = 0);

enum class ErrorNorm { L1, Linf, LinfAway };
struct ConvergenceRow {
    std::uint64_t n;
    Rational error;
};
std::vector<ConvergenceRow> convergence_experiment(const Grid2D& f,
                                                   const std::vector<std::uint64_t>& ns,
                                                   ErrorNorm norm, unsigned threads = 0);

// identity families; measured is the total absolute discrepancy, zero on pass
LemmaReport identity_dirichlet_formula(std::uint64_t n_max, int m);
LemmaReport identity_triangular(std::uint64_t n_max, int m);
LemmaReport identity_reflection(int s_max);
LemmaReport identity_tri_spectral(std::uint64_t n_max);
LemmaReport identity_tiling(std::uint64_t n_max, int m);
LemmaReport identity_character_laws(int resolution);
LemmaReport identity_nat_splits();
// measured C in |K_n^tri| <= C 2^{2|n|}
LemmaReport bound_tri_kernel_pointwise(std::uint64_t n_max);

}  // namespace triwalsh
