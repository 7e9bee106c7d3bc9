#include <doctest.h>

#include <random>
#include <sstream>

#include "triwalsh/grid.hpp"
#include "triwalsh/kernels.hpp"

using namespace triwalsh;

namespace {

Grid1D random_grid1(std::uint64_t seed, int m) {
    Grid1D g = zeros1(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (auto& x : g.v) x = dist(rng);
    g.den = 8;
    return g;
}

Grid2D random_grid2(std::uint64_t seed, int m) {
    Grid2D g = zeros2(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (auto& x : g.v) x = dist(rng);
    g.den = 8;
    return g;
}

// the transform's definition, integrated cell by cell
Rational coefficient_oracle(const Grid1D& f, std::uint64_t n) {
    BigInt acc = 0;
    for (std::uint64_t c = 0; c < f.size(); ++c)
        acc += to_bigint(f.v[c]) * walsh_sign(n, c, f.m);
    return Rational(acc, to_bigint(f.den) << f.m);
}

Rational coefficient_oracle2(const Grid2D& f, std::uint64_t n1, std::uint64_t n2) {
    std::uint64_t cells = std::uint64_t(1) << f.m;
    BigInt acc = 0;
    for (std::uint64_t c1 = 0; c1 < cells; ++c1)
        for (std::uint64_t c2 = 0; c2 < cells; ++c2)
            acc += to_bigint(f.at(c1, c2)) * (walsh_sign(n1, c1, f.m) * walsh_sign(n2, c2, f.m));
    return Rational(acc, to_bigint(f.den) << (2 * f.m));
}

// direct O(4^m) dyadic convolution
Grid1D convolve_oracle(const Grid1D& f, const Grid1D& g) {
    Grid1D out = zeros1(f.m);
    std::uint64_t cells = std::uint64_t(1) << f.m;
    for (std::uint64_t y = 0; y < cells; ++y) {
        i128 acc = 0;
        for (std::uint64_t x = 0; x < cells; ++x)
            acc = add_checked(acc, mul_checked(f.v[x ^ y], g.v[x]));
        out.v[y] = acc;
    }
    out.den = mul_checked(mul_checked(f.den, g.den), i128(1) << f.m);
    reduce(out);
    return out;
}

}  // namespace

TEST_CASE("forward transform equals the defining integral") {
    for (int m = 0; m <= 6; ++m) {
        Grid1D f = random_grid1(100 + m, m);
        Spectrum1D s = fwht_forward(f);
        for (std::uint64_t n = 0; n < f.size(); ++n)
            REQUIRE(s.coefficient(n) == coefficient_oracle(f, n));
    }
    for (int m = 0; m <= 4; ++m) {
        Grid2D f = random_grid2(200 + m, m);
        Spectrum2D s = fwht_forward(f);
        std::uint64_t cells = std::uint64_t(1) << m;
        for (std::uint64_t i = 0; i < cells; ++i)
            for (std::uint64_t j = 0; j < cells; ++j)
                REQUIRE(s.coefficient(i, j) == coefficient_oracle2(f, i, j));
    }
}

TEST_CASE("constant function spectrum") {
    Grid1D f = constant1(4, 3, 2);  // f = 3/2
    Spectrum1D s = fwht_forward(f);
    CHECK(s.coefficient(0) == Rational(3, 2));
    for (std::uint64_t n = 1; n < 16; ++n) CHECK(s.coefficient(n) == 0);
}

TEST_CASE("indicator of the left half") {
    Grid1D f = zeros1(1);
    f.v[0] = 1;
    Spectrum1D s = fwht_forward(f);
    CHECK(s.coefficient(0) == Rational(1, 2));
    CHECK(s.coefficient(1) == Rational(1, 2));
}

TEST_CASE("transform round trip is bit exact") {
    for (int m = 0; m <= 10; ++m) {
        Grid1D f = random_grid1(300 + m, m);
        Grid1D back = fwht_inverse(fwht_forward(f));
        REQUIRE(same_function(f, back));
    }
    for (int m = 0; m <= 5; ++m) {
        Grid2D f = random_grid2(400 + m, m);
        REQUIRE(same_function(f, fwht_inverse(fwht_forward(f))));
    }
}

TEST_CASE("parseval identity") {
    for (int m = 0; m <= 10; m += 2) {
        Grid1D f = random_grid1(500 + m, m);
        Spectrum1D s = fwht_forward(f);
        Rational lhs = 0;
        for (std::uint64_t n = 0; n < f.size(); ++n) {
            Rational c = s.coefficient(n);
            lhs += c * c;
        }
        BigInt sq = 0;
        for (auto& x : f.v) sq += to_bigint(x) * to_bigint(x);
        Rational rhs = Rational(sq, (to_bigint(f.den) * to_bigint(f.den)) << f.m);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("convolution theorem and the direct sum oracle") {
    for (int m = 1; m <= 6; ++m) {
        Grid1D f = random_grid1(600 + m, m);
        Grid1D g = random_grid1(700 + m, m);
        Grid1D conv = xor_convolve(f, g);
        REQUIRE(same_function(conv, convolve_oracle(f, g)));
        Spectrum1D sf = fwht_forward(f), sg = fwht_forward(g), sc = fwht_forward(conv);
        for (std::uint64_t n = 0; n < f.size(); ++n)
            REQUIRE(sc.coefficient(n) == sf.coefficient(n) * sg.coefficient(n));
    }
}

TEST_CASE("convolving with D_{2^m} reproduces resolution-m data") {
    for (int m = 1; m <= 6; ++m) {
        Grid1D f = random_grid1(800 + m, m);
        Grid1D d = dirichlet(Nat(u128(1) << m), m);
        REQUIRE(same_function(xor_convolve(f, d), f));
    }
}

TEST_CASE("convolving with the zero grid") {
    Grid1D f = random_grid1(1, 4);
    Grid1D z = zeros1(4);
    Grid1D conv = xor_convolve(f, z);
    for (auto& x : conv.v) REQUIRE(x == 0);
}

TEST_CASE("resolution mismatch is an error") {
    CHECK_THROWS_AS(xor_convolve(zeros1(3), zeros1(4)), resolution_error);
    Grid1D dst = zeros1(2);
    CHECK_THROWS_AS(accumulate(dst, zeros1(3)), resolution_error);
}

TEST_CASE("integration over regions") {
    // D_{2^n} integrates to one
    for (int n = 0; n <= 5; ++n) {
        Grid1D d = dirichlet(Nat(u128(1) << n), std::max(n, 1));
        CHECK(integrate(d) == 1);
    }
    // measure of J_k
    for (int k = 0; k <= 4; ++k) {
        Grid1D one = constant1(6, 1, 1);
        CHECK(integrate(one, Region1D::shell(k, 6)) == Rational(1, std::uint64_t(1) << (k + 1)));
    }
    // triangle kernel mean
    for (std::uint64_t n : {2, 4, 8}) {
        Grid2D k = tri_fejer(Nat(u128(n)), 4);
        CHECK(integrate(k) == Rational(n - 1, n));
    }
    CHECK_THROWS_AS(integrate(zeros1(3), Region1D::whole(4)), region_error);
}

TEST_CASE("region constructors") {
    Region1D j2 = Region1D::shell(2, 5);
    CHECK(j2.cell_count() == 4);
    CHECK(j2.measure() == Rational(1, 8));
    CHECK(j2.contains(4));
    CHECK(!j2.contains(8));
    CHECK_THROWS_AS(Region1D::shell(5, 5), region_error);

    Region2D out0 = Region2D::outside_square(0, 4);
    CHECK(out0.cell_count() == 0);
    Region2D out2 = Region2D::outside_square(2, 4);
    CHECK(out2.measure() == Rational(15, 16));
    // complement centered away from zero
    Region2D shifted = Region2D::outside_square(1, 3, DyadicPoint(3, 7), DyadicPoint(3, 0));
    CHECK(shifted.measure() == Rational(3, 4));
}

TEST_CASE("pointwise maxima against brute force") {
    RationalGrid1D acc = rational_zeros1(2);
    Grid1D d1 = dirichlet(Nat(1), 2), d2 = dirichlet(Nat(2), 2), d3 = dirichlet(Nat(3), 2);
    pointwise_abs_max(acc, d1);
    pointwise_abs_max(acc, d2);
    pointwise_abs_max(acc, d3);
    for (std::uint64_t c = 0; c < 4; ++c) {
        Rational want = 0;
        for (const Grid1D* g : {&d1, &d2, &d3})
            want = std::max(want, abs(make_rational(g->v[c], g->den)));
        REQUIRE(acc.v[c] == want);
    }
    // max with itself and with zero
    RationalGrid1D acc2 = rational_zeros1(2);
    pointwise_abs_max(acc2, d3);
    pointwise_abs_max(acc2, d3);
    for (std::uint64_t c = 0; c < 4; ++c) REQUIRE(acc2.v[c] == abs(make_rational(d3.v[c], 1)));
    // denominator override: same values, scale carried separately
    RationalGrid1D acc3 = rational_zeros1(2);
    pointwise_abs_max(acc3, d3, i128(2));
    for (std::uint64_t c = 0; c < 4; ++c) REQUIRE(acc3.v[c] == abs(make_rational(d3.v[c], 2)));
}

TEST_CASE("conditional expectation") {
    Grid1D f = random_grid1(42, 5);
    REQUIRE(same_function(conditional_expectation(f, 5), f));
    Grid1D e0 = conditional_expectation(f, 0);
    Rational mean = integrate(f);
    for (std::uint64_t c = 0; c < f.size(); ++c) REQUIRE(e0.value(c) == mean);
    // block average of a quarter indicator
    Grid1D q = zeros1(2);
    q.v[0] = 1;  // indicator of [0, 1/4)
    Grid1D e1 = conditional_expectation(q, 1);
    CHECK(e1.value(0) == Rational(1, 2));
    CHECK(e1.value(1) == Rational(1, 2));
    CHECK(e1.value(2) == 0);
    CHECK(e1.value(3) == 0);
    // tower property and linearity, positivity
    for (int n = 0; n <= 5; ++n)
        for (int k = 0; k <= 5; ++k)
            REQUIRE(same_function(conditional_expectation(conditional_expectation(f, n), k),
                                  conditional_expectation(f, std::min(n, k))));
    Grid2D f2 = random_grid2(43, 3);
    REQUIRE(same_function(conditional_expectation(f2, 3, 3), f2));
    Grid2D pos = zeros2(3);
    for (auto& x : pos.v) x = 1;
    Grid2D epos = conditional_expectation(pos, 1, 2);
    for (auto& x : epos.v) REQUIRE(make_rational(x, epos.den) > 0);
    CHECK_THROWS_AS(conditional_expectation(f, 6), std::domain_error);
}

TEST_CASE("snapshot format round trip") {
    Grid1D f = random_grid1(77, 4);
    std::stringstream ss;
    save_snapshot(ss, f);
    Grid1D back = load_snapshot1(ss);
    REQUIRE(back.m == f.m);
    REQUIRE(back.den == f.den);
    REQUIRE(back.v == f.v);

    Grid2D f2 = random_grid2(78, 3);
    std::stringstream ss2;
    save_snapshot(ss2, f2);
    Grid2D back2 = load_snapshot2(ss2);
    REQUIRE(back2.v == f2.v);
    std::stringstream bad("3\n0\n");
    CHECK_THROWS(load_snapshot1(bad));
}

TEST_CASE("lift replicates cells") {
    Grid1D f = random_grid1(9, 3);
    Grid1D up = lift(f, 6);
    REQUIRE(same_function(f, up));
    Grid2D f2 = random_grid2(10, 2);
    REQUIRE(same_function(f2, lift(f2, 4)));
}

TEST_CASE("overflow is an explicit error, not a wrap") {
    // the true coefficient here needs 127 bits after reduction
    Grid1D f = zeros1(1);
    f.v[0] = (i128(1) << 126) + 1;
    f.v[1] = (i128(1) << 126) + 1;
    CHECK_THROWS_AS(fwht_forward(f), overflow_error);
    CHECK_THROWS_AS(mul_checked(i128(1) << 100, i128(1) << 100), overflow_error);
}

TEST_CASE("automatic widening keeps intermediate products exact") {
    // values small enough to store but big enough that the convolution's
    // spectral products overflow 128 bits in the middle
    Grid1D f = zeros1(6);
    Grid1D g = zeros1(6);
    for (std::uint64_t c = 0; c < 64; ++c) {
        f.v[c] = (i128(1) << 60) + i128(2 * c + 1);
        g.v[c] = (i128(1) << 56) + i128(6 * c + 3);
    }
    Grid1D conv = xor_convolve(f, g);
    REQUIRE(same_function(conv, convolve_oracle(f, g)));
}
