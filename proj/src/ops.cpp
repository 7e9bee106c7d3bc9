#include "triwalsh/ops.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "triwalsh/kernels.hpp"

namespace triwalsh {

namespace {

int default_poly_resolution(std::uint64_t max_index) {
    return max_index >= 1 ? order(Nat(u128(max_index))) + 1 : 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

Rational parse_rational(const std::string& s) {
    auto parts = split(s, '/');
    if (parts.size() == 1) return Rational(BigInt(parts[0]));
    if (parts.size() == 2) return Rational(BigInt(parts[0]), BigInt(parts[1]));
    throw std::invalid_argument("bad rational literal: " + s);
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

}  // namespace

TestFunction make_indicator(int t1, int t2, std::uint64_t c1, std::uint64_t c2, int m) {
    if (t1 < 0 || t2 < 0) throw std::domain_error("indicator: negative order");
    if (t1 > 0 && c1 >= (std::uint64_t(1) << t1)) throw std::domain_error("indicator: c1 out of range");
    if (t2 > 0 && c2 >= (std::uint64_t(1) << t2)) throw std::domain_error("indicator: c2 out of range");
    if (t1 == 0 && c1 != 0) throw std::domain_error("indicator: c1 out of range");
    if (t2 == 0 && c2 != 0) throw std::domain_error("indicator: c2 out of range");
    if (m < 0) m = std::max({t1, t2, 1});
    if (m < t1 || m < t2) throw resolution_error("indicator: resolution below interval order");
    Grid2D g = zeros2(m);
    std::uint64_t r0 = c1 << (m - t1), r1 = (c1 + 1) << (m - t1);
    std::uint64_t s0 = c2 << (m - t2), s1 = (c2 + 1) << (m - t2);
    for (std::uint64_t r = r0; r < r1; ++r)
        for (std::uint64_t s = s0; s < s1; ++s) g.at(r, s) = 1;
    std::ostringstream d;
    d << "indicator:" << t1 << ':' << t2 << ':' << c1 << ':' << c2;
    return TestFunction{TestFunction::Kind::indicator, d.str(), std::move(g)};
}

TestFunction make_poly(const std::vector<std::tuple<std::uint64_t, std::uint64_t, Rational>>& terms,
                       int m) {
    std::uint64_t max_index = 0;
    for (auto& [i, j, q] : terms) max_index = std::max({max_index, i, j});
    if (m < 0) m = default_poly_resolution(max_index);
    if (max_index >= (std::uint64_t(1) << m))
        throw resolution_error("poly: resolution below frequency range");
    BigInt den = 1;
    for (auto& [i, j, q] : terms) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
    Grid2D g = zeros2(m);
    std::uint64_t cells = std::uint64_t(1) << m;
    for (auto& [i, j, q] : terms) {
        BigInt scaled_b = boost::multiprecision::numerator(q) * (den / boost::multiprecision::denominator(q));
        i128 scaled = parse_i128(scaled_b.str());
        for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
            int s1 = walsh_sign(i, c1, m);
            for (std::uint64_t c2 = 0; c2 < cells; ++c2) {
                i128 t = (s1 * walsh_sign(j, c2, m)) > 0 ? scaled : -scaled;
                g.at(c1, c2) = add_checked(g.at(c1, c2), t);
            }
        }
    }
    g.den = parse_i128(den.str());
    std::ostringstream d;
    d << "poly:";
    for (std::size_t t = 0; t < terms.size(); ++t) {
        auto& [i, j, q] = terms[t];
        if (t) d << ';';
        d << i << ',' << j << ',' << boost::multiprecision::numerator(q);
        if (boost::multiprecision::denominator(q) != 1) d << '/' << boost::multiprecision::denominator(q);
    }
    return TestFunction{TestFunction::Kind::poly, d.str(), std::move(g)};
}

TestFunction make_random(std::uint64_t seed, int m) {
    Grid2D g = zeros2(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-32, 32);
    for (auto& x : g.v) x = dist(rng);
    g.den = 16;
    std::ostringstream d;
    d << "random:" << seed << ':' << m;
    return TestFunction{TestFunction::Kind::random, d.str(), std::move(g)};
}

TestFunction make_random_zero(std::uint64_t seed, int m, int a) {
    if (a < 0 || a > m) throw std::domain_error("random_zero: a out of range");
    Grid2D g = zeros2(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-32, 32);
    std::uint64_t side = std::uint64_t(1) << (m - a);
    i128 total = 0;
    for (std::uint64_t c1 = 0; c1 < side; ++c1)
        for (std::uint64_t c2 = 0; c2 < side; ++c2) {
            g.at(c1, c2) = dist(rng);
            total += g.at(c1, c2);
        }
    // subtract the block mean exactly: v' = v*N - total over den*N
    i128 N = i128(side) * i128(side);
    for (std::uint64_t c1 = 0; c1 < side; ++c1)
        for (std::uint64_t c2 = 0; c2 < side; ++c2)
            g.at(c1, c2) = sub_checked(mul_checked(g.at(c1, c2), N), total);
    g.den = mul_checked(16, N);
    reduce(g);
    std::ostringstream d;
    d << "randomzero:" << seed << ':' << m << ':' << a;
    return TestFunction{TestFunction::Kind::random_zero, d.str(), std::move(g)};
}

TestFunction parse_test_function(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.empty()) throw std::invalid_argument("empty test-function spec");
    const std::string& kind = parts[0];
    if (kind == "indicator") {
        if (parts.size() != 5) throw std::invalid_argument("indicator:t1:t2:c1:c2 expected");
        return make_indicator(int(parse_u64(parts[1])), int(parse_u64(parts[2])), parse_u64(parts[3]),
                              parse_u64(parts[4]));
    }
    if (kind == "poly") {
        if (parts.size() != 2) throw std::invalid_argument("poly:i,j,q;... expected");
        std::vector<std::tuple<std::uint64_t, std::uint64_t, Rational>> terms;
        for (auto& term : split(parts[1], ';')) {
            auto f = split(term, ',');
            if (f.size() != 3) throw std::invalid_argument("poly term i,j,q expected: " + term);
            terms.emplace_back(parse_u64(f[0]), parse_u64(f[1]), parse_rational(f[2]));
        }
        return make_poly(terms);
    }
    if (kind == "random") {
        if (parts.size() != 3) throw std::invalid_argument("random:seed:m expected");
        return make_random(parse_u64(parts[1]), int(parse_u64(parts[2])));
    }
    if (kind == "randomzero") {
        if (parts.size() != 4) throw std::invalid_argument("randomzero:seed:m:a expected");
        return make_random_zero(parse_u64(parts[1]), int(parse_u64(parts[2])), int(parse_u64(parts[3])));
    }
    throw std::invalid_argument("unknown test-function kind: " + kind);
}

Spectrum2D coefficients_2d(const Grid2D& f, unsigned threads) { return fwht_forward(f, threads); }

Grid2D partial_sum_rect(const Grid2D& f, std::uint64_t n1, std::uint64_t n2) {
    std::uint64_t cells = std::uint64_t(1) << f.m;
    if (n1 > cells || n2 > cells) throw std::out_of_range("partial_sum_rect: index beyond spectrum range");
    if (n1 == 0 || n2 == 0) return zeros2(f.m);
    Spectrum2D s = fwht_forward(f);
    for (std::uint64_t i = 0; i < cells; ++i)
        for (std::uint64_t j = 0; j < cells; ++j)
            if (i >= n1 || j >= n2) s.at(i, j) = 0;
    return fwht_inverse(s);
}

Grid2D partial_sum_tri(const Grid2D& f, std::uint64_t k) {
    std::uint64_t cells = std::uint64_t(1) << f.m;
    if (k > 2 * cells) throw std::out_of_range("partial_sum_tri: index beyond spectrum range");
    if (k == 0) return zeros2(f.m);
    Spectrum2D s = fwht_forward(f);
    for (std::uint64_t i = 0; i < cells; ++i)
        for (std::uint64_t j = 0; j < cells; ++j)
            if (i + j + 1 > k) s.at(i, j) = 0;
    return fwht_inverse(s);
}

namespace {

// weight(i, j) scaled by n, i.e. the number of k in [0, n) whose partial sum keeps (i, j)
using WeightFn = i128 (*)(std::uint64_t, std::uint64_t, std::uint64_t);

Grid2D multiplier_apply(const Grid2D& f, std::uint64_t n, WeightFn w) {
    Spectrum2D s = fwht_forward(f);
    std::uint64_t cells = std::uint64_t(1) << f.m;
    for (std::uint64_t i = 0; i < cells; ++i)
        for (std::uint64_t j = 0; j < cells; ++j) s.at(i, j) = mul_checked(s.at(i, j), w(i, j, n));
    s.den = mul_checked(s.den, i128(n));
    return fwht_inverse(s);
}

i128 weight_tri(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
    return i + j + 1 < n ? i128(n - i - j - 1) : 0;
}

i128 weight_marc(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
    std::uint64_t top = std::max(i, j);
    return top + 1 < n ? i128(n - 1 - top) : 0;
}

i128 weight_dyadic_tri(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
    i128 c = 0;
    for (std::uint64_t k = i + 1; k < n; ++k)
        if (j < (n ^ k)) ++c;
    return c;
}

Grid2D kernel_apply(const Grid2D& f, const Grid2D& kernel, unsigned threads) {
    int m = std::max(f.m, kernel.m);
    Grid2D ff = f.m == m ? f : lift(f, m);
    Grid2D kk = kernel.m == m ? kernel : lift(kernel, m);
    return xor_convolve(ff, kk, threads);
}

Grid2D dual_route(const Grid2D& mult, const Grid2D& conv, const char* what) {
    if (!same_function(mult, conv))
        throw std::logic_error(std::string(what) + ": multiplier and kernel routes disagree");
    return mult;
}

}  // namespace

Grid2D tri_fejer_mean_multiplier(const Grid2D& f, std::uint64_t n) {
    if (n == 0) throw std::domain_error("tri_fejer_mean requires n >= 1");
    return multiplier_apply(f, n, weight_tri);
}

Grid2D tri_fejer_mean_kernel(const Grid2D& f, std::uint64_t n, unsigned threads) {
    if (n == 0) throw std::domain_error("tri_fejer_mean requires n >= 1");
    int mk = min_resolution(Nat(n));
    if (mk > kMaxResolution2D) throw resolution_error("tri_fejer_mean: kernel resolution beyond cap");
    return kernel_apply(f, tri_fejer(Nat(n), std::max(mk, 1)), threads);
}

Grid2D tri_fejer_mean(const Grid2D& f, std::uint64_t n, unsigned threads) {
    Grid2D mult = tri_fejer_mean_multiplier(f, n);
    if (min_resolution(Nat(n)) > kMaxResolution2D) return mult;  // large-n experiments
    return dual_route(mult, tri_fejer_mean_kernel(f, n, threads), "tri_fejer_mean");
}

Grid2D fejer_mean_rect(const Grid2D& f, std::uint64_t n1, std::uint64_t n2, unsigned threads) {
    if (n1 == 0 || n2 == 0) throw std::domain_error("fejer_mean_rect requires n >= 1");
    Spectrum2D s = fwht_forward(f);
    std::uint64_t cells = std::uint64_t(1) << f.m;
    for (std::uint64_t i = 0; i < cells; ++i)
        for (std::uint64_t j = 0; j < cells; ++j) {
            i128 wi = i + 1 < n1 ? i128(n1 - 1 - i) : 0;
            i128 wj = j + 1 < n2 ? i128(n2 - 1 - j) : 0;
            s.at(i, j) = mul_checked(s.at(i, j), mul_checked(wi, wj));
        }
    s.den = mul_checked(s.den, mul_checked(i128(n1), i128(n2)));
    Grid2D mult = fwht_inverse(s);
    int mk = std::max(min_resolution(Nat(n1)), min_resolution(Nat(n2)));
    if (mk > kMaxResolution2D) return mult;
    int m = std::max(mk, 1);
    Grid2D kernel = outer_product(fejer(Nat(n1), m), fejer(Nat(n2), m));
    return dual_route(mult, kernel_apply(f, kernel, threads), "fejer_mean_rect");
}

Grid2D marcinkiewicz_mean(const Grid2D& f, std::uint64_t n, unsigned threads) {
    if (n == 0) throw std::domain_error("marcinkiewicz_mean requires n >= 1");
    Grid2D mult = multiplier_apply(f, n, weight_marc);
    int mk = min_resolution(Nat(n));
    if (mk > kMaxResolution2D) return mult;
    return dual_route(mult, kernel_apply(f, marcinkiewicz(Nat(n), std::max(mk, 1)), threads),
                      "marcinkiewicz_mean");
}

Grid2D dyadic_tri_mean(const Grid2D& f, std::uint64_t n, unsigned threads) {
    if (n == 0) throw std::domain_error("dyadic_tri_mean requires n >= 1");
    Grid2D mult = multiplier_apply(f, n, weight_dyadic_tri);
    std::uint64_t max_index = 1;
    for (std::uint64_t k = 0; k < n; ++k) max_index = std::max(max_index, std::max(k, n ^ k));
    int mk = min_resolution(Nat(u128(max_index) + 1));
    if (mk > kMaxResolution2D) return mult;
    int m = std::max(mk, 1);
    // kernel (1/n) sum_k D_k (x) D_{n(+)k}
    auto dt = dirichlet_table(max_index, m);
    Grid2D kernel = zeros2(m);
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t k = 0; k < n; ++k) {
        const auto& a = dt[k];
        const auto& b = dt[n ^ k];
        for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
            if (a[c1] == 0) continue;
            i128* row = kernel.v.data() + (c1 << m);
            for (std::uint64_t c2 = 0; c2 < cells; ++c2)
                row[c2] = add_checked(row[c2], mul_checked(a[c1], b[c2]));
        }
    }
    kernel.den = i128(n);
    return dual_route(mult, kernel_apply(f, kernel, threads), "dyadic_tri_mean");
}

RationalGrid2D truncated_maximal_tri(const Grid2D& f, const std::vector<std::uint64_t>& ns,
                                     unsigned threads) {
    if (ns.empty()) throw std::domain_error("truncated_maximal_tri: empty index set");
    RationalGrid2D acc = rational_zeros2(f.m);
    for (std::uint64_t n : ns) {
        Grid2D g = tri_fejer_mean(f, n, threads);
        pointwise_abs_max(acc, g);
    }
    return acc;
}

Grid2D difference(const Grid2D& a, const Grid2D& b) {
    Grid2D neg = b;
    for (auto& x : neg.v) x = -x;
    Grid2D out = a;
    accumulate(out, neg);
    reduce(out);
    return out;
}

Grid1D difference(const Grid1D& a, const Grid1D& b) {
    Grid1D neg = b;
    for (auto& x : neg.v) x = -x;
    Grid1D out = a;
    accumulate(out, neg);
    reduce(out);
    return out;
}

}  // namespace triwalsh
