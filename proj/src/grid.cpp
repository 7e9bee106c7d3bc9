#include "triwalsh/grid.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "triwalsh/fwht.hpp"
#include "triwalsh/parallel.hpp"

namespace triwalsh {

namespace {

void check_res1(int m) {
    if (m < 0 || m > kMaxResolution1D) throw resolution_error("1-D resolution out of range");
}
void check_res2(int m) {
    if (m < 0 || m > kMaxResolution2D) throw resolution_error("2-D resolution out of range");
}

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 lcm_checked(i128 a, i128 b) {
    u128 g = gcd128(u128(a), u128(b));
    return mul_checked(a / i128(g), b);
}

i128 pow2_checked(int e) {
    if (e >= 126) throw overflow_error{};
    return i128(1) << e;
}

// One axis of the exact Paley-ordered transform; self-inverse up to 2^m.
template <class Int>
void paley_transform(std::vector<Int>& a, int m) {
    fwht_in_place(a);
    bit_reverse_permute(a, m);
}

template <class Int>
void paley_transform_rows(std::vector<Int>& a, int m, unsigned threads) {
    std::size_t n = std::size_t(1) << m;
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<Int> row(n);
        for (std::size_t r = lo; r < hi; ++r) {
            std::copy(a.begin() + r * n, a.begin() + (r + 1) * n, row.begin());
            paley_transform(row, m);
            std::copy(row.begin(), row.end(), a.begin() + r * n);
        }
    });
}

template <class Int>
void paley_transform_cols(std::vector<Int>& a, int m, unsigned threads) {
    std::size_t n = std::size_t(1) << m;
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<Int> col(n);
        for (std::size_t c = lo; c < hi; ++c) {
            for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
            paley_transform(col, m);
            for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
        }
    });
}

std::vector<BigInt> widen(const std::vector<i128>& v) {
    std::vector<BigInt> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_bigint(v[i]);
    return out;
}

// divide out gcd(den, values) while still in arbitrary precision
i128 reduce_big(std::vector<BigInt>& v, i128 den) {
    BigInt g = to_bigint(den);
    for (auto& x : v) {
        if (g == 1) break;
        g = boost::multiprecision::gcd(g, x < 0 ? BigInt(-x) : x);
    }
    if (g > 1) {
        for (auto& x : v) x /= g;
        den /= parse_i128(g.str());
    }
    return den;
}

// Narrow back after a BigInt fallback; values that genuinely exceed the
// 128-bit range stay an explicit error.
std::vector<i128> narrow(const std::vector<BigInt>& v) {
    static const BigInt lim = BigInt(1) << 126;
    std::vector<i128> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= lim || v[i] <= -lim) throw overflow_error{};
        bool neg = v[i] < 0;
        BigInt a = neg ? BigInt(-v[i]) : v[i];
        u128 u = (u128(std::uint64_t(a >> 64)) << 64) | u128(std::uint64_t(a & BigInt(0xffffffffffffffffULL)));
        out[i] = neg ? -i128(u) : i128(u);
    }
    return out;
}

}  // namespace

Grid1D zeros1(int m) {
    check_res1(m);
    return Grid1D{m, std::vector<i128>(std::size_t(1) << m, 0), 1};
}

Grid2D zeros2(int m) {
    check_res2(m);
    return Grid2D{m, std::vector<i128>(std::size_t(1) << (2 * m), 0), 1};
}

Grid1D constant1(int m, i128 num, i128 den) {
    check_res1(m);
    if (den <= 0) throw std::domain_error("denominator must be positive");
    return Grid1D{m, std::vector<i128>(std::size_t(1) << m, num), den};
}

Grid2D constant2(int m, i128 num, i128 den) {
    check_res2(m);
    if (den <= 0) throw std::domain_error("denominator must be positive");
    return Grid2D{m, std::vector<i128>(std::size_t(1) << (2 * m), num), den};
}

// --- regions -----------------------------------------------------------

Region1D Region1D::whole(int m) {
    check_res1(m);
    return Region1D{m, {{0, std::uint64_t(1) << m}}};
}

Region1D Region1D::dyadic_interval(int n, DyadicPoint center, int m) {
    check_res1(m);
    if (n < 0 || n > m) throw region_error("dyadic interval order exceeds resolution");
    if (n > center.resolution) throw region_error("dyadic interval order exceeds center resolution");
    std::uint64_t prefix = n == 0 ? 0 : center.cell >> (center.resolution - n);
    return Region1D{m, {{prefix << (m - n), (prefix + 1) << (m - n)}}};
}

Region1D Region1D::shell(int k, int m) {
    check_res1(m);
    if (k < 0 || k + 1 > m) throw region_error("shell J_k needs resolution at least k+1");
    return Region1D{m, {{std::uint64_t(1) << (m - k - 1), std::uint64_t(1) << (m - k)}}};
}

std::uint64_t Region1D::cell_count() const {
    std::uint64_t c = 0;
    for (auto& r : ranges) c += r.second - r.first;
    return c;
}

Rational Region1D::measure() const { return Rational(cell_count(), std::uint64_t(1) << m); }

bool Region1D::contains(std::uint64_t cell) const {
    for (auto& r : ranges)
        if (cell >= r.first && cell < r.second) return true;
    return false;
}

Region2D Region2D::whole(int m) {
    check_res2(m);
    std::uint64_t n = std::uint64_t(1) << m;
    return Region2D{m, {{0, n, 0, n}}};
}

Region2D Region2D::product(const Region1D& a, const Region1D& b) {
    if (a.m != b.m) throw region_error("region product: resolution mismatch");
    Region2D out{a.m, {}};
    for (auto& ra : a.ranges)
        for (auto& rb : b.ranges) out.rects.push_back({ra.first, ra.second, rb.first, rb.second});
    return out;
}

Region2D Region2D::outside_square(int a, int m, DyadicPoint u1, DyadicPoint u2) {
    check_res2(m);
    if (a < 0 || a > m) throw region_error("outside_square: a exceeds resolution");
    std::uint64_t n = std::uint64_t(1) << m;
    auto range_of = [&](DyadicPoint u) {
        std::uint64_t prefix = a == 0 ? 0 : u.cell >> (u.resolution - a);
        return std::pair<std::uint64_t, std::uint64_t>{prefix << (m - a), (prefix + 1) << (m - a)};
    };
    if (a == 0) return Region2D{m, {}};  // complement of I^2 is empty
    if (a > u1.resolution || a > u2.resolution) throw region_error("outside_square: center resolution too small");
    auto [r0, r1] = range_of(u1);
    auto [c0, c1] = range_of(u2);
    Region2D out{m, {}};
    if (r0 > 0) out.rects.push_back({0, r0, 0, n});
    if (r1 < n) out.rects.push_back({r1, n, 0, n});
    if (c0 > 0) out.rects.push_back({r0, r1, 0, c0});
    if (c1 < n) out.rects.push_back({r0, r1, c1, n});
    return out;
}

Region2D Region2D::outside_square(int a, int m) {
    return outside_square(a, m, DyadicPoint(m, 0), DyadicPoint(m, 0));
}

std::uint64_t Region2D::cell_count() const {
    std::uint64_t c = 0;
    for (auto& r : rects) c += (r.r1 - r.r0) * (r.c1 - r.c0);
    return c;
}

Rational Region2D::measure() const { return Rational(cell_count(), std::uint64_t(1) << (2 * m)); }

// --- transforms ----------------------------------------------------------

Spectrum1D fwht_forward(const Grid1D& f, unsigned threads) {
    check_res1(f.m);
    (void)threads;
    i128 den = mul_checked(f.den, pow2_checked(f.m));
    try {
        std::vector<i128> w = f.v;
        paley_transform(w, f.m);
        return Spectrum1D{f.m, std::move(w), den};
    } catch (const overflow_error&) {
        std::vector<BigInt> w = widen(f.v);
        paley_transform(w, f.m);
        return Spectrum1D{f.m, narrow(w), den};
    }
}

Grid1D fwht_inverse(const Spectrum1D& s, unsigned threads) {
    check_res1(s.m);
    (void)threads;
    try {
        std::vector<i128> w = s.c;
        paley_transform(w, s.m);
        Grid1D g{s.m, std::move(w), s.den};
        reduce(g);
        return g;
    } catch (const overflow_error&) {
        std::vector<BigInt> w = widen(s.c);
        paley_transform(w, s.m);
        i128 den = reduce_big(w, s.den);
        return Grid1D{s.m, narrow(w), den};
    }
}

Spectrum2D fwht_forward(const Grid2D& f, unsigned threads) {
    check_res2(f.m);
    i128 den = mul_checked(f.den, mul_checked(pow2_checked(f.m), pow2_checked(f.m)));
    try {
        std::vector<i128> w = f.v;
        paley_transform_rows(w, f.m, threads);
        paley_transform_cols(w, f.m, threads);
        return Spectrum2D{f.m, std::move(w), den};
    } catch (const overflow_error&) {
        std::vector<BigInt> w = widen(f.v);
        paley_transform_rows(w, f.m, threads);
        paley_transform_cols(w, f.m, threads);
        return Spectrum2D{f.m, narrow(w), den};
    }
}

Grid2D fwht_inverse(const Spectrum2D& s, unsigned threads) {
    check_res2(s.m);
    try {
        std::vector<i128> w = s.c;
        paley_transform_rows(w, s.m, threads);
        paley_transform_cols(w, s.m, threads);
        Grid2D g{s.m, std::move(w), s.den};
        reduce(g);
        return g;
    } catch (const overflow_error&) {
        std::vector<BigInt> w = widen(s.c);
        paley_transform_rows(w, s.m, threads);
        paley_transform_cols(w, s.m, threads);
        i128 den = reduce_big(w, s.den);
        return Grid2D{s.m, narrow(w), den};
    }
}

// --- integration -----------------------------------------------------------

Rational integrate(const Grid1D& f, const Region1D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    BigInt acc = 0;
    for (auto& range : r.ranges)
        for (std::uint64_t c = range.first; c < range.second; ++c) acc += to_bigint(f.v[c]);
    return Rational(acc, to_bigint(f.den) << f.m);
}

Rational integrate(const Grid1D& f) { return integrate(f, Region1D::whole(f.m)); }

Rational integrate(const Grid2D& f, const Region2D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    std::uint64_t n = std::uint64_t(1) << f.m;
    BigInt acc = 0;
    for (auto& rect : r.rects)
        for (std::uint64_t c1 = rect.r0; c1 < rect.r1; ++c1) {
            i128 rowsum = 0;
            const i128* row = f.v.data() + c1 * n;
            bool wide = false;
            for (std::uint64_t c2 = rect.c0; c2 < rect.c1; ++c2) {
                if (__builtin_add_overflow(rowsum, row[c2], &rowsum)) {
                    wide = true;
                    break;
                }
            }
            if (!wide) {
                acc += to_bigint(rowsum);
            } else {
                BigInt slow = 0;
                for (std::uint64_t c2 = rect.c0; c2 < rect.c1; ++c2) slow += to_bigint(row[c2]);
                acc += slow;
            }
        }
    return Rational(acc, to_bigint(f.den) << (2 * f.m));
}

Rational integrate(const Grid2D& f) { return integrate(f, Region2D::whole(f.m)); }

Rational integrate_abs(const Grid1D& f, const Region1D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    BigInt acc = 0;
    for (auto& range : r.ranges)
        for (std::uint64_t c = range.first; c < range.second; ++c) acc += to_bigint(abs128(f.v[c]));
    return Rational(acc, to_bigint(f.den) << f.m);
}

Rational integrate_abs(const Grid2D& f, const Region2D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    std::uint64_t n = std::uint64_t(1) << f.m;
    BigInt acc = 0;
    for (auto& rect : r.rects)
        for (std::uint64_t c1 = rect.r0; c1 < rect.r1; ++c1) {
            const i128* row = f.v.data() + c1 * n;
            i128 rowsum = 0;
            bool wide = false;
            for (std::uint64_t c2 = rect.c0; c2 < rect.c1; ++c2)
                if (__builtin_add_overflow(rowsum, abs128(row[c2]), &rowsum)) {
                    wide = true;
                    break;
                }
            if (!wide) {
                acc += to_bigint(rowsum);
            } else {
                BigInt slow = 0;
                for (std::uint64_t c2 = rect.c0; c2 < rect.c1; ++c2) slow += to_bigint(abs128(row[c2]));
                acc += slow;
            }
        }
    return Rational(acc, to_bigint(f.den) << (2 * f.m));
}

Rational integrate_abs(const Grid2D& f) { return integrate_abs(f, Region2D::whole(f.m)); }

// --- convolution -------------------------------------------------------------

namespace {

template <class Int>
std::vector<Int> convolve_core1(std::vector<Int> a, std::vector<Int> b, int m) {
    paley_transform(a, m);
    paley_transform(b, m);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (std::is_same_v<Int, i128>)
            a[i] = mul_checked(a[i], b[i]);
        else
            a[i] *= b[i];
    }
    paley_transform(a, m);
    return a;
}

template <class Int>
std::vector<Int> convolve_core2(std::vector<Int> a, std::vector<Int> b, int m, unsigned threads) {
    paley_transform_rows(a, m, threads);
    paley_transform_cols(a, m, threads);
    paley_transform_rows(b, m, threads);
    paley_transform_cols(b, m, threads);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (std::is_same_v<Int, i128>)
            a[i] = mul_checked(a[i], b[i]);
        else
            a[i] *= b[i];
    }
    paley_transform_rows(a, m, threads);
    paley_transform_cols(a, m, threads);
    return a;
}

}  // namespace

Grid1D xor_convolve(const Grid1D& f, const Grid1D& g, unsigned threads) {
    (void)threads;
    if (f.m != g.m) throw resolution_error("xor_convolve: resolution mismatch");
    i128 den = mul_checked(mul_checked(f.den, g.den), mul_checked(pow2_checked(f.m), pow2_checked(f.m)));
    Grid1D out;
    try {
        out = Grid1D{f.m, convolve_core1(f.v, g.v, f.m), den};
    } catch (const overflow_error&) {
        std::vector<BigInt> w = convolve_core1(widen(f.v), widen(g.v), f.m);
        den = reduce_big(w, den);
        out = Grid1D{f.m, narrow(w), den};
    }
    reduce(out);
    return out;
}

Grid2D xor_convolve(const Grid2D& f, const Grid2D& g, unsigned threads) {
    if (f.m != g.m) throw resolution_error("xor_convolve: resolution mismatch");
    i128 four_m = mul_checked(pow2_checked(f.m), pow2_checked(f.m));
    i128 den = mul_checked(mul_checked(f.den, g.den), mul_checked(four_m, four_m));
    Grid2D out;
    try {
        out = Grid2D{f.m, convolve_core2(f.v, g.v, f.m, threads), den};
    } catch (const overflow_error&) {
        std::vector<BigInt> w = convolve_core2(widen(f.v), widen(g.v), f.m, threads);
        den = reduce_big(w, den);
        out = Grid2D{f.m, narrow(w), den};
    }
    reduce(out);
    return out;
}

// --- grid algebra --------------------------------------------------------------

namespace {

template <class G>
void accumulate_impl(G& dst, const G& src) {
    if (dst.m != src.m) throw resolution_error("accumulate: resolution mismatch");
    if (dst.den == src.den) {
        for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] = add_checked(dst.v[i], src.v[i]);
        return;
    }
    i128 l = lcm_checked(dst.den, src.den);
    i128 sd = l / dst.den;
    i128 ss = l / src.den;
    for (std::size_t i = 0; i < dst.v.size(); ++i)
        dst.v[i] = add_checked(mul_checked(dst.v[i], sd), mul_checked(src.v[i], ss));
    dst.den = l;
}

template <class G>
void reduce_impl(G& g) {
    u128 acc = u128(g.den);
    for (auto& x : g.v) {
        if (acc == 1) return;
        acc = gcd128(acc, u128(abs128(x)));
    }
    i128 d = i128(acc);
    if (d <= 1) return;
    for (auto& x : g.v) x /= d;
    g.den /= d;
}

}  // namespace

void accumulate(Grid1D& dst, const Grid1D& src) { accumulate_impl(dst, src); }
void accumulate(Grid2D& dst, const Grid2D& src) { accumulate_impl(dst, src); }
void reduce(Grid1D& g) { reduce_impl(g); }
void reduce(Grid2D& g) { reduce_impl(g); }

Grid2D outer_product(const Grid1D& a, const Grid1D& b) {
    if (a.m != b.m) throw resolution_error("outer_product: resolution mismatch");
    Grid2D out = zeros2(a.m);
    out.den = mul_checked(a.den, b.den);
    std::uint64_t n = std::uint64_t(1) << a.m;
    for (std::uint64_t c1 = 0; c1 < n; ++c1)
        for (std::uint64_t c2 = 0; c2 < n; ++c2) out.at(c1, c2) = mul_checked(a.v[c1], b.v[c2]);
    return out;
}

Grid1D lift(const Grid1D& g, int m) {
    if (m < g.m) throw resolution_error("lift: target resolution smaller than source");
    check_res1(m);
    Grid1D out{m, std::vector<i128>(std::size_t(1) << m), g.den};
    int shift = m - g.m;
    for (std::size_t c = 0; c < out.v.size(); ++c) out.v[c] = g.v[c >> shift];
    return out;
}

Grid2D lift(const Grid2D& g, int m) {
    if (m < g.m) throw resolution_error("lift: target resolution smaller than source");
    check_res2(m);
    Grid2D out = zeros2(m);
    out.den = g.den;
    int shift = m - g.m;
    std::uint64_t n = std::uint64_t(1) << m;
    for (std::uint64_t c1 = 0; c1 < n; ++c1)
        for (std::uint64_t c2 = 0; c2 < n; ++c2) out.at(c1, c2) = g.at(c1 >> shift, c2 >> shift);
    return out;
}

bool same_function(const Grid1D& a, const Grid1D& b) {
    const Grid1D& fine = a.m >= b.m ? a : b;
    const Grid1D& coarse = a.m >= b.m ? b : a;
    int shift = fine.m - coarse.m;
    BigInt da = to_bigint(fine.den), db = to_bigint(coarse.den);
    for (std::size_t c = 0; c < fine.v.size(); ++c)
        if (to_bigint(fine.v[c]) * db != to_bigint(coarse.v[c >> shift]) * da) return false;
    return true;
}

bool same_function(const Grid2D& a, const Grid2D& b) {
    const Grid2D& fine = a.m >= b.m ? a : b;
    const Grid2D& coarse = a.m >= b.m ? b : a;
    int shift = fine.m - coarse.m;
    BigInt da = to_bigint(fine.den), db = to_bigint(coarse.den);
    std::uint64_t n = std::uint64_t(1) << fine.m;
    for (std::uint64_t c1 = 0; c1 < n; ++c1)
        for (std::uint64_t c2 = 0; c2 < n; ++c2)
            if (to_bigint(fine.at(c1, c2)) * db != to_bigint(coarse.at(c1 >> shift, c2 >> shift)) * da)
                return false;
    return true;
}

Grid1D conditional_expectation(const Grid1D& f, int n) {
    if (n < 0 || n > f.m) throw std::domain_error("conditional_expectation: n out of range");
    std::uint64_t block = std::uint64_t(1) << (f.m - n);
    Grid1D out{f.m, std::vector<i128>(f.v.size()), mul_checked(f.den, i128(block))};
    for (std::size_t b = 0; b < f.v.size(); b += block) {
        i128 s = 0;
        for (std::uint64_t j = 0; j < block; ++j) s = add_checked(s, f.v[b + j]);
        for (std::uint64_t j = 0; j < block; ++j) out.v[b + j] = s;
    }
    reduce(out);
    return out;
}

Grid2D conditional_expectation(const Grid2D& f, int n1, int n2) {
    if (n1 < 0 || n1 > f.m || n2 < 0 || n2 > f.m)
        throw std::domain_error("conditional_expectation: n out of range");
    std::uint64_t b1 = std::uint64_t(1) << (f.m - n1);
    std::uint64_t b2 = std::uint64_t(1) << (f.m - n2);
    std::uint64_t n = std::uint64_t(1) << f.m;
    Grid2D out = zeros2(f.m);
    out.den = mul_checked(f.den, mul_checked(i128(b1), i128(b2)));
    for (std::uint64_t r = 0; r < n; r += b1)
        for (std::uint64_t c = 0; c < n; c += b2) {
            i128 s = 0;
            for (std::uint64_t i = 0; i < b1; ++i)
                for (std::uint64_t j = 0; j < b2; ++j) s = add_checked(s, f.at(r + i, c + j));
            for (std::uint64_t i = 0; i < b1; ++i)
                for (std::uint64_t j = 0; j < b2; ++j) out.at(r + i, c + j) = s;
        }
    reduce(out);
    return out;
}

// --- running maxima ---------------------------------------------------------

RationalGrid1D rational_zeros1(int m) {
    check_res1(m);
    return RationalGrid1D{m, std::vector<Rational>(std::size_t(1) << m)};
}

RationalGrid2D rational_zeros2(int m) {
    check_res2(m);
    return RationalGrid2D{m, std::vector<Rational>(std::size_t(1) << (2 * m))};
}

namespace {

// acc < |num|/den, by cross multiplication in big integers
bool abs_greater(const Rational& acc, i128 num, i128 den) {
    return to_bigint(abs128(num)) * boost::multiprecision::denominator(acc) >
           boost::multiprecision::numerator(acc) * to_bigint(den);
}

}  // namespace

void pointwise_abs_max(RationalGrid1D& acc, const Grid1D& g, std::optional<i128> den_override) {
    if (acc.m != g.m) throw resolution_error("pointwise_abs_max: resolution mismatch");
    i128 den = den_override.value_or(g.den);
    if (den <= 0) throw std::domain_error("pointwise_abs_max: denominator must be positive");
    for (std::size_t i = 0; i < acc.v.size(); ++i)
        if (abs_greater(acc.v[i], g.v[i], den)) acc.v[i] = make_rational(abs128(g.v[i]), den);
}

void pointwise_abs_max(RationalGrid2D& acc, const Grid2D& g, std::optional<i128> den_override) {
    if (acc.m != g.m) throw resolution_error("pointwise_abs_max: resolution mismatch");
    i128 den = den_override.value_or(g.den);
    if (den <= 0) throw std::domain_error("pointwise_abs_max: denominator must be positive");
    for (std::size_t i = 0; i < acc.v.size(); ++i)
        if (abs_greater(acc.v[i], g.v[i], den)) acc.v[i] = make_rational(abs128(g.v[i]), den);
}

void pointwise_abs_max(RationalGrid2D& acc, const RationalGrid2D& g) {
    if (acc.m != g.m) throw resolution_error("pointwise_abs_max: resolution mismatch");
    for (std::size_t i = 0; i < acc.v.size(); ++i) {
        Rational a = abs(g.v[i]);
        if (a > acc.v[i]) acc.v[i] = a;
    }
}

Rational integrate(const RationalGrid1D& f, const Region1D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    Rational acc = 0;
    for (auto& range : r.ranges)
        for (std::uint64_t c = range.first; c < range.second; ++c) acc += f.v[c];
    return acc / Rational(std::uint64_t(1) << f.m);
}

Rational integrate(const RationalGrid2D& f, const Region2D& r) {
    if (f.m != r.m) throw region_error("integrate: region resolution mismatch");
    std::uint64_t n = std::uint64_t(1) << f.m;
    Rational acc = 0;
    for (auto& rect : r.rects)
        for (std::uint64_t c1 = rect.r0; c1 < rect.r1; ++c1)
            for (std::uint64_t c2 = rect.c0; c2 < rect.c1; ++c2) acc += f.v[c1 * n + c2];
    return acc / Rational(BigInt(1) << (2 * f.m));
}

// --- snapshots -----------------------------------------------------------------

void save_snapshot(std::ostream& out, const Grid1D& g) {
    out << g.m << '\n' << to_string(g.den) << '\n';
    for (auto& x : g.v) out << to_string(x) << '\n';
}

void save_snapshot(std::ostream& out, const Grid2D& g) {
    out << g.m << '\n' << to_string(g.den) << '\n';
    for (auto& x : g.v) out << to_string(x) << '\n';
}

namespace {

std::string next_token(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    throw std::runtime_error("snapshot: unexpected end of input");
}

}  // namespace

Grid1D load_snapshot1(std::istream& in) {
    int m = std::stoi(next_token(in));
    check_res1(m);
    i128 den = parse_i128(next_token(in));
    if (den <= 0) throw std::runtime_error("snapshot: denominator must be positive");
    Grid1D g{m, std::vector<i128>(std::size_t(1) << m), den};
    for (auto& x : g.v) x = parse_i128(next_token(in));
    return g;
}

Grid2D load_snapshot2(std::istream& in) {
    int m = std::stoi(next_token(in));
    check_res2(m);
    i128 den = parse_i128(next_token(in));
    if (den <= 0) throw std::runtime_error("snapshot: denominator must be positive");
    Grid2D g{m, std::vector<i128>(std::size_t(1) << (2 * m)), den};
    for (auto& x : g.v) x = parse_i128(next_token(in));
    return g;
}

}  // namespace triwalsh
