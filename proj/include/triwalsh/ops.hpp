#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "triwalsh/grid.hpp"

namespace triwalsh {

// Exact test inputs with a reproducible provenance tag.
struct TestFunction {
    enum class Kind { indicator, poly, random, random_zero };
    Kind kind;
    std::string descriptor;  // mini-language form, round-trips through parse
    Grid2D grid;
};

// indicator of I_{t1}(c1/2^{t1}) x I_{t2}(c2/2^{t2})
TestFunction make_indicator(int t1, int t2, std::uint64_t c1, std::uint64_t c2, int m = -1);
// Walsh polynomial sum q_r * w_{(i_r, j_r)}
TestFunction make_poly(const std::vector<std::tuple<std::uint64_t, std::uint64_t, Rational>>& terms,
                       int m = -1);
// seeded grid of small rationals
TestFunction make_random(std::uint64_t seed, int m);
// seeded, exactly mean-zero, supported in I_a x I_a
TestFunction make_random_zero(std::uint64_t seed, int m, int a);

// mini-language: indicator:t1:t2:c1:c2 | poly:i,j,q;... | random:seed:m | randomzero:seed:m:a
TestFunction parse_test_function(const std::string& text);

Spectrum2D coefficients_2d(const Grid2D& f, unsigned threads = 0);

Grid2D partial_sum_rect(const Grid2D& f, std::uint64_t n1, std::uint64_t n2);
Grid2D partial_sum_tri(const Grid2D& f, std::uint64_t k);

// Means are computed along two independent routes (spectral multiplier and
// kernel convolution) which must agree exactly; the multiplier result is returned.
// The kernel route is skipped only when its resolution would exceed the 2-D cap.
Grid2D tri_fejer_mean(const Grid2D& f, std::uint64_t n, unsigned threads = 0);
Grid2D fejer_mean_rect(const Grid2D& f, std::uint64_t n1, std::uint64_t n2, unsigned threads = 0);
Grid2D marcinkiewicz_mean(const Grid2D& f, std::uint64_t n, unsigned threads = 0);
Grid2D dyadic_tri_mean(const Grid2D& f, std::uint64_t n, unsigned threads = 0);

// multiplier-only fast paths (used by oracles and large-n experiments)
Grid2D tri_fejer_mean_multiplier(const Grid2D& f, std::uint64_t n);
Grid2D tri_fejer_mean_kernel(const Grid2D& f, std::uint64_t n, unsigned threads = 0);

// cellwise max over the index set of |sigma_n^tri f|
RationalGrid2D truncated_maximal_tri(const Grid2D& f, const std::vector<std::uint64_t>& ns,
                                     unsigned threads = 0);

Grid2D difference(const Grid2D& a, const Grid2D& b);
Grid1D difference(const Grid1D& a, const Grid1D& b);

}  // namespace triwalsh
