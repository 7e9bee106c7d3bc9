#include "triwalsh/lemmas.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "triwalsh/fwht.hpp"
#include "triwalsh/kernels.hpp"
#include "triwalsh/parallel.hpp"

namespace triwalsh {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     start)
            .count();
    }
};

std::string range_string(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "|" : "") << v[i];
    return os.str();
}

Rational max_abs_value(const Grid2D& g) {
    i128 best = 0;
    for (auto& x : g.v) best = std::max(best, abs128(x));
    return make_rational(best, g.den);
}

}  // namespace

// --- Lemma delta1 -------------------------------------------------------------

Delta1Result delta1_integral(int A, unsigned threads) {
    if (A < 0 || A > 10) throw std::domain_error("delta1_integral: A out of supported range [0,10]");
    Timer timer;
    int m = A + 1;
    std::size_t cells = std::size_t(1) << m;
    std::uint64_t twoA = std::uint64_t(1) << A;

    std::vector<i128> strict_sup(cells * cells, 0);
    std::vector<i128> special_abs(cells * cells, 0);

    parallel_for(cells, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<i128> coef(cells);
        for (std::size_t c1 = lo; c1 < hi; ++c1) {
            i128* strict_row = strict_sup.data() + c1 * cells;
            i128* special_row = special_abs.data() + c1 * cells;
            for (std::uint64_t n = 0; n <= twoA; ++n) {
                std::fill(coef.begin(), coef.end(), 0);
                for (std::uint64_t k = 0; k < twoA; ++k)
                    coef[k + n] = walsh_sign(k, c1, m);
                fwht_in_place(coef);
                bit_reverse_permute(coef, m);
                if (n < twoA) {
                    for (std::size_t c2 = 0; c2 < cells; ++c2)
                        strict_row[c2] = std::max(strict_row[c2], abs128(coef[c2]));
                } else {
                    for (std::size_t c2 = 0; c2 < cells; ++c2) special_row[c2] = abs128(coef[c2]);
                }
            }
        }
    });

    BigInt strict_sum = 0, special_sum = 0, full_sum = 0;
    for (std::size_t i = 0; i < strict_sup.size(); ++i) {
        strict_sum += to_bigint(strict_sup[i]);
        special_sum += to_bigint(special_abs[i]);
        full_sum += to_bigint(std::max(strict_sup[i], special_abs[i]));
    }
    Rational scale = Rational(1, BigInt(1) << (2 * m + A));  // 1/(4^m * 2^A)

    Rational bound = Rational(8) * DeltaConstant::upper().pow(unsigned(A));

    Delta1Result out;
    out.full.lemma = "delta1";
    out.full.add_param("A", A);
    out.full.add_param("sup", "n<=2^A");
    out.full.measured = Rational(full_sum) * scale;
    out.full.bound = bound;
    out.full.set_ratio();
    out.full.verdict = out.full.measured <= out.full.bound ? "pass" : "fail";
    out.full.ms = timer.ms();

    out.special.lemma = "delta1-special";
    out.special.add_param("A", A);
    out.special.add_param("n", std::int64_t(twoA));
    out.special.measured = Rational(special_sum) * scale;
    out.special.bound = Rational(1, BigInt(1) << A);
    out.special.set_ratio();
    out.special.verdict = out.special.measured == out.special.bound ? "pass" : "fail";
    out.special.ms = timer.ms();

    out.strict.lemma = "delta1-strict";
    out.strict.add_param("A", A);
    out.strict.add_param("sup", "n<2^A");
    out.strict.measured = Rational(strict_sum) * scale;
    out.strict.bound = bound;
    out.strict.set_ratio();
    out.strict.verdict = out.strict.measured <= out.strict.bound ? "pass" : "fail";
    out.strict.ms = timer.ms();
    return out;
}

// --- quadruple counting -------------------------------------------------------

std::uint64_t quadruple_count_raw(int A, unsigned threads) {
    if (A < 0 || A > 8) throw std::domain_error("quadruple_count: A out of supported range [0,8]");
    std::uint64_t size = std::uint64_t(1) << A;
    std::vector<std::uint64_t> per_n(size, 0);
    parallel_for(size, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> kn(size);
        for (std::size_t n = lo; n < hi; ++n) {
            for (std::uint64_t k = 0; k < size; ++k) kn[k] = std::uint32_t(k + n);
            std::uint64_t count = 0;
            for (std::uint64_t k = 0; k < size; ++k) {
                std::uint32_t pk = kn[k];
                for (std::uint64_t l = 0; l < size; ++l) {
                    std::uint32_t pkl = pk ^ kn[l];
                    std::uint64_t q = k ^ l;
                    for (std::uint64_t i = 0; i < size; ++i)
                        if ((pkl ^ kn[i]) == kn[q ^ i]) ++count;
                }
            }
            per_n[n] = count;
        }
    });
    std::uint64_t total = 0;
    for (auto c : per_n) total += c;
    return total;
}

namespace {

Rational quadruple_bound(int A) {
    int blocks = A / 4;
    int rem_bits = std::min(12, 4 * (A % 4));
    BigInt b = 1;
    for (int i = 0; i < blocks; ++i) b *= 65535;
    b <<= rem_bits;
    return Rational(b);
}

}  // namespace

LemmaReport quadruple_count(int A, unsigned threads) {
    Timer timer;
    std::uint64_t count = quadruple_count_raw(A, threads);
    LemmaReport r;
    r.lemma = "quadruples";
    r.add_param("A", A);
    r.measured = Rational(count);
    r.bound = quadruple_bound(A);
    // the paper pins the remainder factor only for A = 4t+3; report the flat
    // 2^12 reading alongside
    BigInt alt = 1;
    for (int i = 0; i < A / 4; ++i) alt *= 65535;
    alt <<= 12;
    r.add_param("alt_bound", alt.str());
    r.set_ratio();
    r.verdict = r.measured <= r.bound ? "pass" : "fail";
    r.ms = timer.ms();
    return r;
}

LemmaReport quadruple_l4_identity(int A, unsigned threads) {
    if (A < 0 || A > 5) throw std::domain_error("quadruple_l4_identity: A out of supported range [0,5]");
    Timer timer;
    int m = A + 1;
    std::size_t cells = std::size_t(1) << m;
    std::uint64_t twoA = std::uint64_t(1) << A;
    // sum over n < 2^A of the exact integral of T_n^4
    std::vector<BigInt> per_n(twoA, 0);
    parallel_for(twoA, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<i128> coef(cells);
        for (std::size_t n = lo; n < hi; ++n) {
            BigInt acc = 0;
            for (std::size_t c1 = 0; c1 < cells; ++c1) {
                std::fill(coef.begin(), coef.end(), 0);
                for (std::uint64_t k = 0; k < twoA; ++k) coef[k + n] = walsh_sign(k, c1, m);
                fwht_in_place(coef);
                bit_reverse_permute(coef, m);
                for (std::size_t c2 = 0; c2 < cells; ++c2) {
                    BigInt t = to_bigint(coef[c2]);
                    acc += t * t * t * t;
                }
            }
            per_n[n] = acc;
        }
    });
    BigInt total = 0;
    for (auto& x : per_n) total += x;
    Rational integral = Rational(total, BigInt(1) << (2 * m));

    std::uint64_t count = quadruple_count_raw(A, threads);
    LemmaReport r;
    r.lemma = "quadruples-l4";
    r.add_param("A", A);
    r.measured = integral;
    r.bound = Rational(count);
    r.set_ratio();
    r.verdict = r.measured == r.bound ? "pass" : "fail";
    r.ms = timer.ms();
    return r;
}

LemmaReport pattern_exclusion_check(int A, unsigned threads) {
    if (A < 4 || A % 4 != 0 || A > 8)
        throw std::domain_error("pattern_exclusion_check: A must be 4 or 8");
    Timer timer;
    int free_bits = A - 4;
    std::uint64_t completions = std::uint64_t(1) << (4 * free_bits);
    std::uint64_t free_size = std::uint64_t(1) << free_bits;
    int blocks = A / 4;

    std::uint64_t satisfied_total = 0;
    std::ostringstream note;
    for (int blk = 1; blk <= blocks; ++blk) {
        int b0 = 4 * (blk - 1);
        auto insert = [&](std::uint64_t free, std::uint64_t nibble) {
            std::uint64_t lowmask = (std::uint64_t(1) << b0) - 1;
            std::uint64_t low = free & lowmask;
            std::uint64_t high = free >> b0;
            return low | (nibble << b0) | (high << (b0 + 4));
        };
        // pattern alpha_n=(0,0,1,0), alpha_k=(0,0,0,0), alpha_l=(0,0,1,0), alpha_i=(0,1,0,0)
        std::vector<std::uint64_t> per_fn(free_size, 0);
        parallel_for(free_size, threads, [&](std::size_t lo, std::size_t hi) {
            for (std::uint64_t fn = lo; fn < hi; ++fn) {
                std::uint64_t local = 0;
                std::uint64_t n = insert(fn, 2);
                for (std::uint64_t fk = 0; fk < free_size; ++fk) {
                    std::uint64_t k = insert(fk, 0);
                    std::uint64_t kn = k + n;
                    for (std::uint64_t fl = 0; fl < free_size; ++fl) {
                        std::uint64_t l = insert(fl, 2);
                        std::uint64_t a = kn ^ (l + n);
                        std::uint64_t kl = k ^ l;
                        for (std::uint64_t fi = 0; fi < free_size; ++fi) {
                            std::uint64_t i = insert(fi, 4);
                            if ((a ^ (i + n)) == ((kl ^ i) + n)) ++local;
                        }
                    }
                }
                per_fn[fn] = local;
            }
        });
        std::uint64_t satisfied = 0;
        for (auto c : per_fn) satisfied += c;
        satisfied_total += satisfied;
        note << (blk > 1 ? ";" : "") << "block" << blk << "=" << satisfied;
    }

    LemmaReport r;
    r.lemma = "patterns";
    r.add_param("A", A);
    r.add_param("blocks", blocks);
    r.add_param("completions", std::int64_t(completions));
    r.measured = Rational(satisfied_total);
    r.bound = 0;
    r.ratio = 0;
    r.verdict = satisfied_total == 0 ? "pass" : "fail";
    r.note = note.str();
    r.ms = timer.ms();
    return r;
}

// --- Corollary corF+F -----------------------------------------------------------

Grid2D corF_grid(int t2, int s, std::uint64_t low_bits, unsigned threads) {
    if (t2 < 0 || s <= t2 || s > 10) throw std::domain_error("corF: need 0 <= t2 < s <= 10");
    if (low_bits >= (std::uint64_t(1) << (t2 + 1))) throw std::domain_error("corF: low bits out of range");
    int m = s + 1;
    std::size_t cells = std::size_t(1) << m;
    std::uint64_t high_count = std::uint64_t(1) << (s - t2 - 1);
    std::uint64_t n_count = std::uint64_t(1) << s;
    u128 himask = ~((u128(1) << (t2 + 1)) - 1);

    Grid2D F = zeros2(m);
    parallel_for(cells, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<i128> coef(cells);
        for (std::size_t c1 = lo; c1 < hi; ++c1) {
            i128* row = F.v.data() + (c1 << m);
            for (std::uint64_t n = 0; n < n_count; ++n) {
                std::fill(coef.begin(), coef.end(), 0);
                for (std::uint64_t kh = 0; kh < high_count; ++kh) {
                    std::uint64_t k = low_bits | (kh << (t2 + 1));
                    std::uint64_t idx2 = std::uint64_t((u128(n + k)) & himask);
                    int sign = walsh_sign(u128(k) & himask, c1, m);
                    coef[idx2] = add_checked(coef[idx2], sign);
                }
                fwht_in_place(coef);
                bit_reverse_permute(coef, m);
                for (std::size_t c2 = 0; c2 < cells; ++c2)
                    row[c2] = std::max(row[c2], abs128(coef[c2]));
            }
        }
    });
    return F;
}

LemmaReport corF_bound(int t2, int s, std::uint64_t low_bits, unsigned threads) {
    Timer timer;
    Grid2D F = corF_grid(t2, s, low_bits, threads);
    int m = F.m;
    Region1D block = Region1D::dyadic_interval_zero(t2 + 1, m);
    Rational integral = integrate(F, Region2D::product(block, block));
    LemmaReport r;
    r.lemma = "corF";
    r.add_param("t2", t2);
    r.add_param("s", s);
    r.add_param("lowbits", std::int64_t(low_bits));
    r.measured = Rational(BigInt(1) << (2 * t2)) * integral;
    int e = s - t2;
    r.bound = Rational(BigInt(1) << e) * DeltaConstant::upper().pow(unsigned(e));
    r.set_ratio();
    r.verdict = "report";  // constant C left free by the paper
    r.ms = timer.ms();
    return r;
}

// --- Lemma marc ------------------------------------------------------------------

Grid2D marc_sup_grid(int s, unsigned threads) {
    if (s < 1 || s > 8) throw std::domain_error("marc: need 1 <= s <= 8");
    int m = s + 1;
    std::size_t cells = std::size_t(1) << m;
    std::uint64_t pow_s = std::uint64_t(1) << s;

    Grid2D sup = zeros2(m);
    parallel_for(cells, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<i128> dval(pow_s + 1);
        std::vector<i128> suffix(pow_s + 1);
        std::vector<i128> coef(cells);
        for (std::size_t c1 = lo; c1 < hi; ++c1) {
            dval[0] = 0;  // D_0
            for (std::uint64_t k = 0; k < pow_s; ++k)
                dval[k + 1] = add_checked(dval[k], walsh_sign(k, c1, m));
            suffix[pow_s] = 0;
            for (std::uint64_t t = pow_s; t-- > 0;) suffix[t] = add_checked(suffix[t + 1], dval[t]);
            i128* row = sup.v.data() + (c1 << m);
            for (std::uint64_t n = 0; n < pow_s; ++n) {
                // coefficient at frequency j: sum over k >= j - n + 1 of D_k(x1)
                for (std::size_t j = 0; j < cells; ++j) {
                    std::int64_t t = std::int64_t(j) - std::int64_t(n) + 1;
                    if (t < 0) t = 0;
                    if (t > std::int64_t(pow_s)) t = std::int64_t(pow_s);
                    coef[j] = suffix[std::size_t(t)];
                }
                fwht_in_place(coef);
                bit_reverse_permute(coef, m);
                for (std::size_t c2 = 0; c2 < cells; ++c2)
                    row[c2] = std::max(row[c2], abs128(coef[c2]));
            }
        }
    });
    return sup;
}

LemmaReport marc_integral_from(const Grid2D& sup, int t1, int t2, int s) {
    if (!(0 <= t1 && t1 <= t2 && t2 < s)) throw std::domain_error("marc: need 0 <= t1 <= t2 < s");
    Timer timer;
    int m = sup.m;
    Region2D region = Region2D::product(Region1D::shell(t1, m), Region1D::shell(t2, m));
    LemmaReport r;
    r.lemma = "marc";
    r.add_param("t1", t1);
    r.add_param("t2", t2);
    r.add_param("s", s);
    r.measured = integrate(sup, region);
    int cube = t2 - t1 + 1;
    r.bound = Rational(BigInt(cube) * cube * cube * (BigInt(1) << (t1 + s)), BigInt(1) << t2) *
              DeltaConstant::upper().pow(unsigned(s - t2));
    r.set_ratio();
    r.verdict = "report";
    r.ms = timer.ms();
    return r;
}

LemmaReport marc_integral(int t1, int t2, int s, unsigned threads) {
    if (!(0 <= t1 && t1 <= t2 && t2 < s && s <= 8))
        throw std::domain_error("marc: need 0 <= t1 <= t2 < s <= 8");
    return marc_integral_from(marc_sup_grid(s, threads), t1, t2, s);
}

// --- B1/B2 split ------------------------------------------------------------------

B1B2 b1b2_decomposition(int t1, int t2, int i, int s, std::uint64_t n, std::uint64_t cell1,
                        std::uint64_t cell2) {
    if (!(0 <= t1 && t1 <= t2 && t2 < s && s <= 10)) throw std::domain_error("b1b2: bad t1/t2/s");
    if (!(1 <= i && i < t2 - t1)) throw std::domain_error("b1b2: need 1 <= i < t2 - t1");
    if (n >= (std::uint64_t(1) << s)) throw std::domain_error("b1b2: n out of range");
    int m = s + 1;
    DyadicPoint x1(m, cell1), x2(m, cell2);
    // x1 in J_{t1,i}: leading zeros, one at t1, zeros, one at t1+i
    for (int d = 0; d < t1; ++d)
        if (x1.digit(d) != 0) throw std::domain_error("b1b2: x1 not in J_{t1,i}");
    if (x1.digit(t1) != 1) throw std::domain_error("b1b2: x1 not in J_{t1,i}");
    for (int d = t1 + 1; d < t1 + i; ++d)
        if (x1.digit(d) != 0) throw std::domain_error("b1b2: x1 not in J_{t1,i}");
    if (x1.digit(t1 + i) != 1) throw std::domain_error("b1b2: x1 not in J_{t1,i}");
    for (int d = 0; d < t2; ++d)
        if (x2.digit(d) != 0) throw std::domain_error("b1b2: x2 not in J_{t2}");
    if (x2.digit(t2) != 1) throw std::domain_error("b1b2: x2 not in J_{t2}");

    std::uint64_t pow_s = std::uint64_t(1) << s;
    // the full double sum sum_k D_k(x1) D_{n+k}(x2), directly
    i128 full = 0;
    {
        std::vector<i128> d2(n + pow_s + 1);
        d2[0] = 0;
        for (std::uint64_t j = 0; j < n + pow_s; ++j)
            d2[j + 1] = add_checked(d2[j], walsh_sign(j, cell2, m));
        i128 d1 = 0;  // D_k(x1), incremental
        for (std::uint64_t k = 0; k < pow_s; ++k) {
            if (k > 0) d1 = add_checked(d1, walsh_sign(k - 1, cell1, m));
            full = add_checked(full, mul_checked(d1, d2[n + k]));
        }
    }

    std::uint64_t low_count = std::uint64_t(1) << (t2 + 1);
    std::uint64_t high_count = std::uint64_t(1) << (s - t2 - 1);
    u128 himask = ~((u128(1) << (t2 + 1)) - 1);
    std::uint64_t t1mask = (std::uint64_t(1) << t1) - 1;
    std::uint64_t midmask = ((std::uint64_t(1) << t2) - 1) & ~((std::uint64_t(1) << (t1 + i)) - 1);

    i128 b1 = 0, b2 = 0;
    for (std::uint64_t klow = 0; klow < low_count; ++klow) {
        // w of the digits t1+1..t2 of k at x1
        u128 mid_index = u128(klow) & ~((u128(1) << (t1 + 1)) - 1);
        int sign_mid = walsh_sign(mid_index, cell1, m);
        int kt1 = int((klow >> t1) & 1);
        i128 factor1 = i128(klow & t1mask) - (i128(kt1) << t1);
        std::uint64_t nk = n + klow;
        int nkt2 = int((nk >> t2) & 1);
        int sign_pm = ((kt1 + nkt2) & 1) ? -1 : 1;
        i128 p1 = i128(nk & ((std::uint64_t(1) << (t1 + i)) - 1));
        i128 p2 = i128(nk & midmask) - (i128(nkt2) << t2);
        i128 tail = 0;
        for (std::uint64_t kh = 0; kh < high_count; ++kh) {
            std::uint64_t k = klow | (kh << (t2 + 1));
            int sgn = walsh_sign(u128(k) & himask, cell1, m) *
                      walsh_sign(u128(n + k) & himask, cell2, m);
            tail = add_checked(tail, sgn);
        }
        i128 common = mul_checked(i128(sign_mid * sign_pm), mul_checked(factor1, tail));
        b1 = add_checked(b1, mul_checked(common, p1));
        b2 = add_checked(b2, mul_checked(common, p2));
    }
    return B1B2{make_rational(b1, 1), make_rational(b2, 1), make_rational(full, 1)};
}

LemmaReport b1b2_exhaustive(int s) {
    if (s < 3 || s > 6) throw std::domain_error("b1b2_exhaustive: need 3 <= s <= 6");
    Timer timer;
    int m = s + 1;
    Rational disc = 0;
    std::int64_t checked = 0;
    bool triangle_ok = true;
    for (int t1 = 0; t1 + 2 <= s - 1; ++t1)
        for (int t2 = t1 + 2; t2 < s; ++t2)
            for (int i = 1; i < t2 - t1; ++i) {
                int p = t1 + i + 1;
                std::uint64_t prefix = (std::uint64_t(1) << i) | 1;  // digits t1 and t1+i set
                std::uint64_t r0 = prefix << (m - p), r1 = (prefix + 1) << (m - p);
                std::uint64_t c0 = std::uint64_t(1) << (m - t2 - 1), c1 = std::uint64_t(1) << (m - t2);
                for (std::uint64_t cell1 = r0; cell1 < r1; ++cell1)
                    for (std::uint64_t cell2 = c0; cell2 < c1; ++cell2)
                        for (std::uint64_t n = 0; n < (std::uint64_t(1) << s); ++n) {
                            B1B2 b = b1b2_decomposition(t1, t2, i, s, n, cell1, cell2);
                            disc += abs(b.b1 + b.b2 - b.full);
                            if (abs(b.full) > abs(b.b1) + abs(b.b2)) triangle_ok = false;
                            ++checked;
                        }
            }
    LemmaReport r;
    r.lemma = "b1b2";
    r.add_param("s", s);
    r.add_param("checked", checked);
    r.measured = disc;
    r.bound = 0;
    r.ratio = 0;
    r.verdict = (disc == 0 && triangle_ok) ? "pass" : "fail";
    r.ms = timer.ms();
    return r;
}

// --- digit-block tiling of [0, n) ----------------------------------------------------

std::vector<std::pair<int, Grid2D>> kernel_decomposition_terms(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("kernel_decomposition_terms: n >= 1 required");
    if (m < min_resolution(n)) throw resolution_error("kernel_decomposition_terms: resolution too small");
    std::uint64_t nn = n.u64();
    auto dt = dirichlet_table(nn, m);
    std::uint64_t cells = std::uint64_t(1) << m;
    std::vector<std::pair<int, Grid2D>> out;
    for (int s = order(n); s >= 0; --s) {
        if (!n.bit(s)) continue;
        std::uint64_t high = nn >> (s + 1) << (s + 1);  // n^(s+1)
        std::uint64_t low = nn & ((std::uint64_t(1) << (s + 1)) - 1);  // n_(s)
        Grid2D term = zeros2(m);
        for (std::uint64_t k = 0; k < (std::uint64_t(1) << s); ++k) {
            const auto& a = dt[high + k];
            const auto& b = dt[low - k];
            for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
                if (a[c1] == 0) continue;
                i128* row = term.v.data() + (c1 << m);
                for (std::uint64_t c2 = 0; c2 < cells; ++c2)
                    row[c2] = add_checked(row[c2], mul_checked(a[c1], b[c2]));
            }
        }
        out.emplace_back(s, std::move(term));
    }
    return out;
}

// --- Lemmas sup_kernel_int_t1/t2/t3 ---------------------------------------------------

LemmaReport sup_kernel_parts(int a, int t1, int t2, const std::vector<int>& A_range,
                             SupPartVariant variant, unsigned threads) {
    if (A_range.empty()) throw std::domain_error("sup_kernel_parts: empty A range");
    int maxA = *std::max_element(A_range.begin(), A_range.end());
    int minA = *std::min_element(A_range.begin(), A_range.end());
    if (maxA > 8 || minA < 0) throw std::domain_error("sup_kernel_parts: A out of range [0,8]");
    if (!(0 <= t1 && t1 <= t2)) throw std::domain_error("sup_kernel_parts: need 0 <= t1 <= t2");
    if (t1 > a) throw std::domain_error("sup_kernel_parts: t1 > a");
    int m = maxA + 1;
    if (t2 + 1 > m) throw std::domain_error("sup_kernel_parts: t2 exceeds resolution of max A");
    Timer timer;

    std::size_t cells = std::size_t(1) << m;
    std::uint64_t row_lo = std::uint64_t(1) << (m - t1 - 1), row_hi = std::uint64_t(1) << (m - t1);
    std::uint64_t col_lo = std::uint64_t(1) << (m - t2 - 1), col_hi = std::uint64_t(1) << (m - t2);

    RationalGrid2D acc = rational_zeros2(m);

    for (int A : A_range) {
        std::uint64_t n_lo = std::uint64_t(1) << A, n_hi = std::uint64_t(1) << (A + 1);
        auto dt = dirichlet_table(n_hi - 1, m);
        int s_lo, s_hi;
        switch (variant) {
            case SupPartVariant::low:
                s_lo = 0;
                s_hi = std::min(t1, A);
                break;
            case SupPartVariant::mid:
                s_lo = t1 + 1;
                s_hi = std::min(t2, A);
                break;
            default:
                s_lo = t2 + 1;
                s_hi = A;
                break;
        }
        if (s_lo > s_hi) continue;
        BigInt denA = BigInt(1) << A;
        parallel_for(row_hi - row_lo, threads, [&](std::size_t lo, std::size_t hi) {
            std::vector<i128> coef(cells), rowsum(cells);
            std::vector<i128> prefix;
            for (std::size_t rr = lo; rr < hi; ++rr) {
                std::uint64_t c1 = row_lo + rr;
                for (std::uint64_t n = n_lo; n < n_hi; ++n) {
                    std::fill(rowsum.begin(), rowsum.end(), 0);
                    bool any = false;
                    for (int s = s_lo; s <= s_hi; ++s) {
                        if (!((n >> s) & 1)) continue;
                        any = true;
                        std::uint64_t high = n >> (s + 1) << (s + 1);
                        std::uint64_t low = n & ((std::uint64_t(1) << (s + 1)) - 1);
                        std::uint64_t pow_s = std::uint64_t(1) << s;
                        prefix.assign(pow_s + 1, 0);
                        for (std::uint64_t k = 0; k < pow_s; ++k)
                            prefix[k + 1] = add_checked(prefix[k], dt[high + k][c1]);
                        // coefficient at j over x2: sum_{k < min(2^s, low - j)} D_{high+k}(x1)
                        for (std::size_t j = 0; j < cells; ++j) {
                            if (j >= low) {
                                coef[j] = 0;
                                continue;
                            }
                            std::uint64_t cut = std::min<std::uint64_t>(pow_s, low - j);
                            coef[j] = prefix[cut];
                        }
                        fwht_in_place(coef);
                        bit_reverse_permute(coef, m);
                        for (std::size_t c2 = 0; c2 < cells; ++c2)
                            rowsum[c2] = add_checked(rowsum[c2], abs128(coef[c2]));
                    }
                    if (!any) continue;
                    for (std::uint64_t c2 = col_lo; c2 < col_hi; ++c2) {
                        Rational& cur = acc.v[(c1 << m) + c2];
                        if (to_bigint(rowsum[c2]) * boost::multiprecision::denominator(cur) >
                            boost::multiprecision::numerator(cur) * denA)
                            cur = Rational(to_bigint(rowsum[c2]), denA);
                    }
                }
            }
        });
    }

    Region2D region = Region2D::product(Region1D::shell(t1, m), Region1D::shell(t2, m));
    LemmaReport r;
    switch (variant) {
        case SupPartVariant::low: r.lemma = "supparts-t1"; break;
        case SupPartVariant::mid: r.lemma = "supparts-t2"; break;
        default: r.lemma = "supparts-t3"; break;
    }
    r.add_param("a", a);
    r.add_param("t1", t1);
    r.add_param("t2", t2);
    r.add_param("A", range_string(A_range));
    r.measured = integrate(acc, region);
    r.bound = 1;
    r.set_ratio();
    r.verdict = "report";
    r.ms = timer.ms();
    return r;
}

// --- Yano estimate ---------------------------------------------------------------------

LemmaReport yano_check(int t1, int s) {
    if (!(0 <= t1 && t1 < s && s <= 12)) throw std::domain_error("yano: need 0 <= t1 < s <= 12");
    Timer timer;
    int m = s;
    Grid1D K = fejer(Nat(u128(1) << s), m);  // values 2^s * K_{2^s}
    std::uint64_t lo = std::uint64_t(1) << (m - t1 - 1), hi = std::uint64_t(1) << (m - t1);
    std::uint64_t support_cell = std::uint64_t(1) << (m - 1 - t1);  // I_s(e_{t1}) is one cell here
    bool support_ok = true;
    i128 peak = 0;
    for (std::uint64_t c = lo; c < hi; ++c) {
        if (c == support_cell) {
            peak = abs128(K.v[c]);
        } else if (K.v[c] != 0) {
            support_ok = false;
        }
    }
    LemmaReport r;
    r.lemma = "yano";
    r.add_param("t1", t1);
    r.add_param("s", s);
    r.measured = make_rational(peak, K.den);  // max |K_{2^s}| on J_{t1}
    r.bound = Rational(BigInt(1) << t1);
    r.set_ratio();
    r.verdict = support_ok ? "pass" : "fail";
    r.note = "support claim exact; ratio is the measured constant";
    r.ms = timer.ms();
    return r;
}

// --- Memic maximal estimate ---------------------------------------------------------------

LemmaReport mem_maximal_check(int t1, int A, std::uint64_t N, unsigned threads) {
    (void)threads;
    if (t1 < 0 || A < t1) throw std::domain_error("mem: need 0 <= t1 <= A");
    if (N < (std::uint64_t(1) << A)) throw std::domain_error("mem: need N >= 2^A");
    Timer timer;
    int m = std::max(min_resolution(Nat(u128(N))), t1 + 1);
    if (m > kMaxResolution1D) throw resolution_error("mem: N beyond the 1-D resolution cap");
    std::size_t cells = std::size_t(1) << m;
    std::uint64_t lo = std::uint64_t(1) << (m - t1 - 1), hi = std::uint64_t(1) << (m - t1);

    std::vector<i128> dcur(cells, 0), ksum(cells, 0);
    RationalGrid1D acc = rational_zeros1(m);
    for (std::uint64_t n = 1; n <= N; ++n) {
        // ksum = sum_{k<n} D_k = n*K_n after adding D_{n-1}
        for (std::size_t c = 0; c < cells; ++c) ksum[c] = add_checked(ksum[c], dcur[c]);
        for (std::size_t c = 0; c < cells; ++c)
            dcur[c] = add_checked(dcur[c], walsh_sign(n - 1, c, m));
        if (n < (std::uint64_t(1) << A)) continue;
        BigInt den_n = n;
        for (std::uint64_t c = lo; c < hi; ++c) {
            BigInt val = to_bigint(abs128(ksum[c]));
            if (val * boost::multiprecision::denominator(acc.v[c]) >
                boost::multiprecision::numerator(acc.v[c]) * den_n)
                acc.v[c] = Rational(val, den_n);
        }
    }
    LemmaReport r;
    r.lemma = "mem";
    r.add_param("t1", t1);
    r.add_param("A", A);
    r.add_param("N", std::int64_t(N));
    r.measured = integrate(acc, Region1D::shell(t1, m));
    r.bound = Rational(BigInt(A - t1 + 1) * (BigInt(1) << t1), BigInt(1) << A);
    r.set_ratio();
    r.verdict = "report";
    r.note = "sup truncated to n <= N: a lower bound of the paper's quantity";
    r.ms = timer.ms();
    return r;
}

// --- Lemma sup_kernel_int ---------------------------------------------------------------

std::vector<LemmaReport> sup_tri_kernel_trend(int a, const std::vector<std::uint64_t>& Ns,
                                              unsigned threads) {
    if (a < 0) throw std::domain_error("supkernel: a >= 0 required");
    if (Ns.empty()) throw std::domain_error("supkernel: empty N list");
    std::vector<std::uint64_t> sorted = Ns;
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t maxN = sorted.back();
    if (maxN > 512) throw std::domain_error("supkernel: N beyond the supported cap 512");
    Timer timer;

    std::vector<LemmaReport> out;
    auto emit = [&](std::uint64_t N, const Rational& measured) {
        LemmaReport r;
        r.lemma = "supkernel";
        r.add_param("a", a);
        r.add_param("N", std::int64_t(N));
        r.measured = measured;
        r.bound = 1;
        r.set_ratio();
        r.verdict = a == 0 ? "pass" : "report";
        if (a == 0) r.note = "I^2 \\ (I_0 x I_0) is empty";
        r.ms = timer.ms();
        out.push_back(std::move(r));
    };

    if (a == 0) {
        for (auto N : sorted) emit(N, 0);
        return out;
    }
    std::uint64_t start = std::uint64_t(1) << a;
    int m = std::max(min_resolution(Nat(u128(maxN))), a);
    RationalGrid2D acc = rational_zeros2(m);
    Region2D region = Region2D::outside_square(a, m);
    std::size_t next = 0;
    while (next < sorted.size() && sorted[next] < start) {
        emit(sorted[next], 0);  // empty truncation set
        ++next;
    }
    for (std::uint64_t n = start; n <= maxN && next < sorted.size(); ++n) {
        Grid2D k = tri_fejer(Nat(u128(n)), m);
        pointwise_abs_max(acc, k);
        (void)threads;
        while (next < sorted.size() && sorted[next] == n) {
            emit(n, integrate(acc, region));
            ++next;
        }
    }
    return out;
}

LemmaReport sup_tri_kernel_integral(int a, std::uint64_t N, unsigned threads) {
    return sup_tri_kernel_trend(a, {N}, threads).front();
}

// --- Corollary L1norm_of_K_n ------------------------------------------------------------

Rational tri_kernel_l1(std::uint64_t n, unsigned threads) {
    if (n == 0) throw std::domain_error("tri_kernel_l1: n >= 1 required");
    if (n > 512) throw std::domain_error("tri_kernel_l1: n beyond the supported cap 512");
    int m = min_resolution(Nat(u128(n)));
    Grid2D k = tri_fejer(Nat(u128(n)), m);
    (void)threads;
    return integrate_abs(k);
}

LemmaReport tri_kernel_l1_report(std::uint64_t n, unsigned threads) {
    Timer timer;
    LemmaReport r;
    r.lemma = "l1";
    r.add_param("n", std::int64_t(n));
    r.measured = tri_kernel_l1(n, threads);
    r.bound = 1;
    r.set_ratio();
    Rational lower = n == 0 ? Rational(0) : Rational(n - 1, n);
    r.verdict = r.measured >= lower ? "pass" : "fail";
    r.note = "pass iff ||K_n||_1 >= (n-1)/n, the exact lower bound from the mean";
    r.ms = timer.ms();
    return r;
}

// --- Lemma quasi_local ---------------------------------------------------------------------

QuasiResult quasi_locality_check(const TestFunction& f, int a, const std::vector<std::uint64_t>& Ns,
                                 unsigned threads) {
    const Grid2D& g = f.grid;
    if (a < 0 || a > g.m) throw std::domain_error("quasi: a out of range");
    std::uint64_t side = std::uint64_t(1) << g.m;
    std::uint64_t block = std::uint64_t(1) << (g.m - a);
    for (std::uint64_t c1 = 0; c1 < side; ++c1)
        for (std::uint64_t c2 = 0; c2 < side; ++c2)
            if ((c1 >= block || c2 >= block) && g.at(c1, c2) != 0)
                throw std::domain_error("quasi: f not supported inside I_a x I_a");
    if (integrate(g) != 0) throw std::domain_error("quasi: f is not mean-zero");
    if (Ns.empty()) throw std::domain_error("quasi: empty N list");
    Timer timer;

    QuasiResult out;
    out.f_l1 = integrate_abs(g);

    Rational worst = 0;
    for (std::uint64_t n = 1; n < (std::uint64_t(1) << a); ++n) {
        Grid2D s = tri_fejer_mean(g, n, threads);
        worst = std::max(worst, max_abs_value(s));
    }
    out.vanishing.lemma = "quasi-vanishing";
    out.vanishing.add_param("f", f.descriptor);
    out.vanishing.add_param("a", a);
    out.vanishing.measured = worst;
    out.vanishing.bound = 0;
    out.vanishing.ratio = 0;
    out.vanishing.verdict = worst == 0 ? "pass" : "fail";
    out.vanishing.ms = timer.ms();

    std::vector<std::uint64_t> sorted = Ns;
    std::sort(sorted.begin(), sorted.end());
    RationalGrid2D acc = rational_zeros2(g.m);
    Region2D region = Region2D::outside_square(a, g.m);
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= sorted.back(); ++n) {
        Grid2D s = tri_fejer_mean(g, n, threads);
        pointwise_abs_max(acc, s);
        while (next < sorted.size() && sorted[next] == n) {
            LemmaReport r;
            r.lemma = "quasi";
            r.add_param("f", f.descriptor);
            r.add_param("a", a);
            r.add_param("N", std::int64_t(n));
            r.measured = integrate(acc, region);
            r.bound = out.f_l1;
            r.set_ratio();
            r.verdict = "report";
            r.ms = timer.ms();
            out.ratios.push_back(std::move(r));
            ++next;
        }
    }
    return out;
}

// --- convergence --------------------------------------------------------------------------

namespace {

Rational grid_linf(const Grid2D& d) { return max_abs_value(d); }

Rational grid_linf_away(const Grid2D& d, const Grid2D& f) {
    // cells where f is locally constant: all axis-neighbors share its value
    std::uint64_t side = std::uint64_t(1) << f.m;
    i128 best = 0;
    for (std::uint64_t c1 = 0; c1 < side; ++c1)
        for (std::uint64_t c2 = 0; c2 < side; ++c2) {
            bool flat = true;
            i128 v = f.at(c1, c2);
            if (c1 > 0 && f.at(c1 - 1, c2) != v) flat = false;
            if (c1 + 1 < side && f.at(c1 + 1, c2) != v) flat = false;
            if (c2 > 0 && f.at(c1, c2 - 1) != v) flat = false;
            if (c2 + 1 < side && f.at(c1, c2 + 1) != v) flat = false;
            if (flat) best = std::max(best, abs128(d.at(c1, c2)));
        }
    return make_rational(best, d.den);
}

}  // namespace

std::vector<ConvergenceRow> convergence_experiment(const Grid2D& f,
                                                   const std::vector<std::uint64_t>& ns,
                                                   ErrorNorm norm, unsigned threads) {
    std::vector<ConvergenceRow> rows;
    for (std::uint64_t n : ns) {
        Grid2D s = tri_fejer_mean(f, n, threads);
        Grid2D d = difference(s, f);
        Rational err;
        switch (norm) {
            case ErrorNorm::L1: err = integrate_abs(d); break;
            case ErrorNorm::Linf: err = grid_linf(d); break;
            case ErrorNorm::LinfAway: err = grid_linf_away(d, f); break;
        }
        rows.push_back({n, err});
    }
    return rows;
}

// --- identity families ------------------------------------------------------------------------

namespace {

LemmaReport identity_report(const char* name, const Rational& discrepancy, std::int64_t checked,
                            Timer timer) {
    LemmaReport r;
    r.lemma = name;
    r.add_param("checked", checked);
    r.measured = discrepancy;
    r.bound = 0;
    r.ratio = 0;
    r.verdict = discrepancy == 0 ? "pass" : "fail";
    r.ms = timer.ms();
    return r;
}

Rational abs_diff_integral(const Grid1D& a, const Grid1D& b) {
    Grid1D d = a;
    Grid1D nb = b;
    for (auto& x : nb.v) x = -x;
    accumulate(d, nb);
    BigInt acc = 0;
    for (auto& x : d.v) acc += to_bigint(abs128(x));
    return Rational(acc, to_bigint(d.den) << d.m);
}

Rational abs_diff_integral(const Grid2D& a, const Grid2D& b) {
    Grid2D d = a;
    Grid2D nb = b;
    for (auto& x : nb.v) x = -x;
    accumulate(d, nb);
    BigInt acc = 0;
    for (auto& x : d.v) acc += to_bigint(abs128(x));
    return Rational(acc, to_bigint(d.den) << (2 * d.m));
}

}  // namespace

LemmaReport identity_dirichlet_formula(std::uint64_t n_max, int m) {
    Timer timer;
    Rational disc = 0;
    std::int64_t checked = 0;
    for (std::uint64_t n = 1; n < n_max; ++n) {
        disc += abs_diff_integral(dirichlet(Nat(u128(n)), m), dirichlet_formula(Nat(u128(n)), m));
        ++checked;
    }
    return identity_report("identity-dirichlet-formula", disc, checked, timer);
}

LemmaReport identity_triangular(std::uint64_t n_max, int m) {
    Timer timer;
    Rational disc = 0;
    std::int64_t checked = 0;
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        // sum_{k<n} D_k^tri, the definitional route
        Grid2D lhs = zeros2(m);
        for (std::uint64_t k = 0; k < n; ++k) accumulate(lhs, tri_dirichlet(Nat(u128(k)), m));
        lhs.den = i128(n);
        Grid2D mid = tri_fejer_direct(Nat(u128(n)), m);
        // the symmetric form sum_i D_{n-i}(x1) D_i(x2)
        Grid2D sym = zeros2(m);
        if (n >= 2) {
            auto dt = dirichlet_table(n - 1, m);
            for (std::uint64_t i = 1; i < n; ++i) {
                const auto& aa = dt[n - i];
                const auto& bb = dt[i];
                for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
                    if (aa[c1] == 0) continue;
                    i128* row = sym.v.data() + (c1 << m);
                    for (std::uint64_t c2 = 0; c2 < cells; ++c2)
                        row[c2] = add_checked(row[c2], mul_checked(aa[c1], bb[c2]));
                }
            }
        }
        sym.den = i128(n);
        disc += abs_diff_integral(lhs, mid);
        disc += abs_diff_integral(mid, sym);
        ++checked;
    }
    return identity_report("identity-triangular", disc, checked, timer);
}

LemmaReport identity_reflection(int s_max) {
    Timer timer;
    Rational disc = 0;
    std::int64_t checked = 0;
    for (int s = 0; s <= s_max; ++s) {
        int m = std::max(s, 1);
        std::uint64_t pow_s = std::uint64_t(1) << s;
        Grid1D dpow = dirichlet(Nat(u128(pow_s)), m);
        auto w_top = walsh_row(u128(pow_s) - 1, m);
        for (std::uint64_t k = 0; k <= pow_s; ++k) {
            Grid1D lhs = dirichlet(Nat(u128(pow_s - k)), m);
            Grid1D rhs = dpow;  // D_{2^s} - w_{2^s-1} D_k
            Grid1D dk = dirichlet(Nat(u128(k)), m);
            for (std::size_t c = 0; c < rhs.v.size(); ++c)
                rhs.v[c] = sub_checked(rhs.v[c], mul_checked(w_top[c], dk.v[c]));
            disc += abs_diff_integral(lhs, rhs);
            ++checked;
        }
    }
    return identity_report("identity-reflection", disc, checked, timer);
}

LemmaReport identity_tri_spectral(std::uint64_t n_max) {
    Timer timer;
    Rational disc = 0;
    std::int64_t checked = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        int m = min_resolution(Nat(u128(n)));
        Grid2D direct = tri_fejer_direct(Nat(u128(n)), m);
        Spectrum2D s = fwht_forward(direct);
        std::uint64_t cells = std::uint64_t(1) << m;
        for (std::uint64_t i = 0; i < cells; ++i)
            for (std::uint64_t j = 0; j < cells; ++j) {
                i128 want = (i + j + 1 < n) ? i128(n - i - j - 1) : 0;
                // coefficient of n*K^tri at (i,j) is want; spectrum carries K^tri
                disc += abs(s.coefficient(i, j) * Rational(n) - make_rational(want, 1));
            }
        ++checked;
    }
    return identity_report("identity-tri-spectral", disc, checked, timer);
}

LemmaReport identity_tiling(std::uint64_t n_max, int m) {
    Timer timer;
    Rational disc = 0;
    std::int64_t checked = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        auto terms = kernel_decomposition_terms(Nat(u128(n)), m);
        Grid2D total = zeros2(m);
        for (auto& [s, g] : terms) accumulate(total, g);
        Grid2D expect = tri_fejer(Nat(u128(n)), m);
        expect.den = 1;  // compare against n*K_n^tri as raw integers
        disc += abs_diff_integral(total, expect);
        ++checked;
    }
    return identity_report("identity-tiling", disc, checked, timer);
}

LemmaReport identity_character_laws(int resolution) {
    Timer timer;
    std::int64_t mismatches = 0;
    std::uint64_t cells = std::uint64_t(1) << resolution;
    for (std::uint64_t n = 0; n < cells; ++n)
        for (std::uint64_t x = 0; x < cells; ++x) {
            int wx = walsh_sign(n, x, resolution);
            for (std::uint64_t y = 0; y < cells; ++y) {
                if (walsh_sign(n, x ^ y, resolution) != wx * walsh_sign(n, y, resolution))
                    ++mismatches;
                if (walsh_sign(n ^ y, x, resolution) != walsh_sign(n, x, resolution) * walsh_sign(y, x, resolution))
                    ++mismatches;
            }
        }
    return identity_report("identity-character-laws", Rational(mismatches),
                           std::int64_t(cells * cells * cells * 2), timer);
}

LemmaReport identity_nat_splits() {
    Timer timer;
    std::int64_t mismatches = 0;
    std::int64_t checked = 0;
    for (std::uint64_t n = 0; n < (1 << 12); ++n)
        for (int k = 0; k <= 12; ++k) {
            if (low_part(Nat(u128(n)), k).value() + high_part(Nat(u128(n)), k + 1).value() != n)
                ++mismatches;
            ++checked;
        }
    for (std::uint64_t n = 0; n < (1 << 10); ++n)
        for (std::uint64_t k = 0; k < (1 << 10); ++k) {
            if (dyadic_add(Nat(u128(n)), Nat(u128(k))).value() != (n ^ k)) ++mismatches;
            if (dyadic_add(dyadic_add(Nat(u128(n)), Nat(u128(k))), Nat(u128(k))).value() != n)
                ++mismatches;
            checked += 2;
        }
    return identity_report("identity-nat-splits", Rational(mismatches), checked, timer);
}

LemmaReport bound_tri_kernel_pointwise(std::uint64_t n_max) {
    Timer timer;
    Rational worst = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        int m = min_resolution(Nat(u128(n)));
        Grid2D k = tri_fejer(Nat(u128(n)), m);
        Rational c = max_abs_value(k) / Rational(BigInt(1) << (2 * (n >= 2 ? order(Nat(u128(n))) : 0)));
        worst = std::max(worst, c);
    }
    LemmaReport r;
    r.lemma = "bound-tri-kernel";
    r.add_param("n_max", std::int64_t(n_max));
    r.measured = worst;
    r.bound = 1;
    r.set_ratio();
    r.verdict = worst <= 1 ? "pass" : "fail";
    r.ms = timer.ms();
    return r;
}

}  // namespace triwalsh
