#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triwalsh/dyadic.hpp"
#include "triwalsh/int128.hpp"
#include "triwalsh/rational.hpp"

namespace triwalsh {

struct resolution_error : std::domain_error {
    explicit resolution_error(const std::string& what) : std::domain_error(what) {}
};
struct region_error : std::domain_error {
    explicit region_error(const std::string& what) : std::domain_error(what) {}
};

inline constexpr int kMaxResolution1D = 24;
inline constexpr int kMaxResolution2D = 16;  // per axis

// Piecewise-constant function on I: cell |-> v[cell] / den, constant on I_m cells.
struct Grid1D {
    int m = 0;
    std::vector<i128> v;
    i128 den = 1;

    std::size_t size() const { return v.size(); }
    Rational value(std::uint64_t cell) const { return make_rational(v[cell], den); }
};

// Same on I^2; row-major, v[(c1 << m) + c2] with c1 the first coordinate.
struct Grid2D {
    int m = 0;
    std::vector<i128> v;
    i128 den = 1;

    std::size_t rows() const { return std::size_t(1) << m; }
    i128& at(std::uint64_t c1, std::uint64_t c2) { return v[(c1 << m) + c2]; }
    const i128& at(std::uint64_t c1, std::uint64_t c2) const { return v[(c1 << m) + c2]; }
    Rational value(std::uint64_t c1, std::uint64_t c2) const { return make_rational(at(c1, c2), den); }
};

Grid1D zeros1(int m);
Grid2D zeros2(int m);
Grid1D constant1(int m, i128 num, i128 den);
Grid2D constant2(int m, i128 num, i128 den);

// Exact Walsh coefficients, coefficient n = num[n] / den.
struct Spectrum1D {
    int m = 0;
    std::vector<i128> c;
    i128 den = 1;

    Rational coefficient(std::uint64_t n) const { return make_rational(c[n], den); }
};

struct Spectrum2D {
    int m = 0;
    std::vector<i128> c;
    i128 den = 1;

    i128& at(std::uint64_t n1, std::uint64_t n2) { return c[(n1 << m) + n2]; }
    const i128& at(std::uint64_t n1, std::uint64_t n2) const { return c[(n1 << m) + n2]; }
    Rational coefficient(std::uint64_t n1, std::uint64_t n2) const { return make_rational(at(n1, n2), den); }
};

// Finite unions of whole-cell ranges; every integral in the toolkit is a sum
// over such a region, so alignment with the grid is exact by construction.
struct Region1D {
    int m = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;  // half-open cell ranges

    static Region1D whole(int m);
    // I_n(center): cells sharing the first n digits with the center point.
    static Region1D dyadic_interval(int n, DyadicPoint center, int m);
    static Region1D dyadic_interval_zero(int n, int m) { return dyadic_interval(n, DyadicPoint(m, 0), m); }
    // J_k = I_k \ I_{k+1}.
    static Region1D shell(int k, int m);

    std::uint64_t cell_count() const;
    Rational measure() const;
    bool contains(std::uint64_t cell) const;
};

struct Region2D {
    struct Rect {
        std::uint64_t r0, r1, c0, c1;  // half-open in both axes
    };
    int m = 0;
    std::vector<Rect> rects;  // pairwise disjoint

    static Region2D whole(int m);
    static Region2D product(const Region1D& a, const Region1D& b);
    // I^2 \ (I_a(u1) x I_a(u2)).
    static Region2D outside_square(int a, int m, DyadicPoint u1, DyadicPoint u2);
    static Region2D outside_square(int a, int m);

    std::uint64_t cell_count() const;
    Rational measure() const;
};

// --- transforms ---------------------------------------------------------

// Exact realization of f^(n) = int f w_n. Inverse reconstructs bit-exactly.
Spectrum1D fwht_forward(const Grid1D& f, unsigned threads = 0);
Grid1D fwht_inverse(const Spectrum1D& s, unsigned threads = 0);
Spectrum2D fwht_forward(const Grid2D& f, unsigned threads = 0);
Grid2D fwht_inverse(const Spectrum2D& s, unsigned threads = 0);

// --- exact integration ---------------------------------------------------

Rational integrate(const Grid1D& f, const Region1D& r);
Rational integrate(const Grid1D& f);
Rational integrate(const Grid2D& f, const Region2D& r);
Rational integrate(const Grid2D& f);
Rational integrate_abs(const Grid1D& f, const Region1D& r);
Rational integrate_abs(const Grid2D& f, const Region2D& r);
Rational integrate_abs(const Grid2D& f);

// --- dyadic (XOR) convolution --------------------------------------------

// (f*g)(y) = int f(x+y) g(x) dx with + the dyadic addition.
Grid1D xor_convolve(const Grid1D& f, const Grid1D& g, unsigned threads = 0);
Grid2D xor_convolve(const Grid2D& f, const Grid2D& g, unsigned threads = 0);

// --- grid algebra ---------------------------------------------------------

// dst += src, exact; denominators are aligned by cross-scaling when they differ.
void accumulate(Grid1D& dst, const Grid1D& src);
void accumulate(Grid2D& dst, const Grid2D& src);
Grid2D outer_product(const Grid1D& a, const Grid1D& b);
// divide out gcd(all values, den)
void reduce(Grid1D& g);
void reduce(Grid2D& g);
// replicate cells up to a finer resolution
Grid1D lift(const Grid1D& g, int m);
Grid2D lift(const Grid2D& g, int m);
// exact equality as functions on I (resolutions may differ)
bool same_function(const Grid1D& a, const Grid1D& b);
bool same_function(const Grid2D& a, const Grid2D& b);

// E_n: averaging over I_n blocks (per axis for 2-D).
Grid1D conditional_expectation(const Grid1D& f, int n);
Grid2D conditional_expectation(const Grid2D& f, int n1, int n2);

// --- exact running maxima --------------------------------------------------

struct RationalGrid1D {
    int m = 0;
    std::vector<Rational> v;
};
struct RationalGrid2D {
    int m = 0;
    std::vector<Rational> v;

    Rational& at(std::uint64_t c1, std::uint64_t c2) { return v[(c1 << m) + c2]; }
};

RationalGrid1D rational_zeros1(int m);
RationalGrid2D rational_zeros2(int m);

// acc := max(acc, |g|) cellwise; comparisons cross-multiply, no rounding.
// den_override replaces g.den for callers that carry the scale separately.
void pointwise_abs_max(RationalGrid1D& acc, const Grid1D& g, std::optional<i128> den_override = std::nullopt);
void pointwise_abs_max(RationalGrid2D& acc, const Grid2D& g, std::optional<i128> den_override = std::nullopt);
void pointwise_abs_max(RationalGrid2D& acc, const RationalGrid2D& g);

Rational integrate(const RationalGrid1D& f, const Region1D& r);
Rational integrate(const RationalGrid2D& f, const Region2D& r);

// --- snapshot format --------------------------------------------------------
// line 1: m, line 2: denominator, then one value per line (row-major for 2-D).

void save_snapshot(std::ostream& out, const Grid1D& g);
void save_snapshot(std::ostream& out, const Grid2D& g);
Grid1D load_snapshot1(std::istream& in);
Grid2D load_snapshot2(std::istream& in);

}  // namespace triwalsh
