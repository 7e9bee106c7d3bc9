#include "triwalsh/kernels.hpp"

#include <algorithm>

#include "triwalsh/fwht.hpp"

namespace triwalsh {

namespace {

void require_min_res(Nat n, int m) {
    if (m < min_resolution(n)) throw resolution_error("kernel resolution too small for index range");
}

// in-place a += b
void add_row(std::vector<i128>& a, const std::vector<i128>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = add_checked(a[i], b[i]);
}

}  // namespace

int min_resolution(Nat n) {
    std::uint64_t top = n.value() > 1 ? std::uint64_t(n.value() - 1) : 1;
    return order(Nat(top)) + 1;
}

std::vector<i128> walsh_row(u128 n, int m) {
    std::size_t cells = std::size_t(1) << m;
    std::vector<i128> row(cells);
    for (std::size_t c = 0; c < cells; ++c) row[c] = walsh_sign(n, c, m);
    return row;
}

std::vector<std::vector<i128>> dirichlet_table(std::uint64_t N, int m) {
    std::size_t cells = std::size_t(1) << m;
    std::vector<std::vector<i128>> table(N + 1, std::vector<i128>(cells, 0));
    for (std::uint64_t k = 0; k < N; ++k) {
        table[k + 1] = table[k];
        for (std::size_t c = 0; c < cells; ++c)
            table[k + 1][c] = add_checked(table[k + 1][c], walsh_sign(k, c, m));
    }
    return table;
}

Grid1D dirichlet(Nat n, int m) {
    require_min_res(n, m);
    Grid1D g = zeros1(m);
    for (u128 k = 0; k < n.value(); ++k) add_row(g.v, walsh_row(k, m));
    return g;
}

Grid1D dirichlet_spectral(Nat n, int m) {
    require_min_res(n, m);
    Spectrum1D s{m, std::vector<i128>(std::size_t(1) << m, 0), 1};
    for (u128 k = 0; k < n.value(); ++k) s.c[std::size_t(k)] = 1;
    return fwht_inverse(s);
}

Grid1D dirichlet_formula(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("dirichlet_formula requires n >= 1");
    require_min_res(n, m);
    Grid1D g = zeros1(m);
    int top = order(n);
    std::size_t cells = std::size_t(1) << m;
    for (std::size_t c = 0; c < cells; ++c) {
        DyadicPoint x(m, c);
        // D_{2^i}(x) = 2^i on I_i, 0 elsewhere; x in I_i iff the leading i digits vanish
        i128 sum = 0;
        for (int i = 0; i <= top; ++i) {
            if (!n.bit(i)) continue;
            bool in_Ii = (i == 0) || (c >> (m - i)) == 0;
            if (!in_Ii) continue;
            i128 term = i128(1) << i;
            if (rademacher(i, x) < 0) term = -term;
            sum = add_checked(sum, term);
        }
        g.v[c] = walsh_sign(n.value(), c, m) < 0 ? -sum : sum;
    }
    return g;
}

Grid1D fejer(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("fejer requires n >= 1");
    require_min_res(n, m);
    std::size_t cells = std::size_t(1) << m;
    std::vector<i128> cur(cells, 0);  // D_k
    Grid1D g = zeros1(m);
    for (u128 k = 0; k < n.value(); ++k) {
        add_row(g.v, cur);
        for (std::size_t c = 0; c < cells; ++c) cur[c] = add_checked(cur[c], walsh_sign(k, c, m));
    }
    g.den = i128(n.value());
    return g;
}

Grid1D fejer_spectral(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("fejer requires n >= 1");
    require_min_res(n, m);
    Spectrum1D s{m, std::vector<i128>(std::size_t(1) << m, 0), 1};
    for (u128 j = 0; j + 1 < n.value(); ++j) s.c[std::size_t(j)] = i128(n.value() - 1 - j);
    Grid1D g = fwht_inverse(s);
    g.den = mul_checked(g.den, i128(n.value()));
    return g;
}

Grid2D tri_dirichlet(Nat k, int m) {
    require_min_res(k, m);
    Grid2D g = zeros2(m);
    if (k.value() == 0) return g;
    std::uint64_t kk = std::uint64_t(k.value());
    auto dt = dirichlet_table(kk, m);
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t i = 0; i < kk; ++i) {
        auto wi = walsh_row(i, m);
        const auto& dj = dt[kk - i];  // sum_{j<=k-1-i} w_j = D_{k-i}
        for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
            if (wi[c1] == 0) continue;
            i128* row = g.v.data() + (c1 << m);
            if (wi[c1] > 0)
                for (std::uint64_t c2 = 0; c2 < cells; ++c2) row[c2] = add_checked(row[c2], dj[c2]);
            else
                for (std::uint64_t c2 = 0; c2 < cells; ++c2) row[c2] = sub_checked(row[c2], dj[c2]);
        }
    }
    return g;
}

Grid2D tri_dirichlet_spectral(Nat k, int m) {
    require_min_res(k, m);
    Spectrum2D s{m, std::vector<i128>(std::size_t(1) << (2 * m), 0), 1};
    std::uint64_t kk = std::uint64_t(k.value());
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t i = 0; i < std::min(kk, cells); ++i)
        for (std::uint64_t j = 0; i + j + 1 <= kk && j < cells; ++j) s.at(i, j) = 1;
    return fwht_inverse(s);
}

Grid2D tri_fejer(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("tri_fejer requires n >= 1");
    require_min_res(n, m);
    std::uint64_t nn = std::uint64_t(n.value());
    std::uint64_t cells = std::uint64_t(1) << m;
    Spectrum2D s{m, std::vector<i128>(std::size_t(1) << (2 * m), 0), 1};
    for (std::uint64_t i = 0; i < std::min(nn, cells); ++i)
        for (std::uint64_t j = 0; i + j + 1 < nn && j < cells; ++j) s.at(i, j) = i128(nn - i - j - 1);
    Grid2D g = fwht_inverse(s);
    g.den = mul_checked(g.den, i128(nn));
    return g;
}

Grid2D tri_fejer_direct(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("tri_fejer requires n >= 1");
    require_min_res(n, m);
    std::uint64_t nn = std::uint64_t(n.value());
    auto dt = dirichlet_table(nn == 0 ? 0 : nn - 1, m);
    Grid2D g = zeros2(m);
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t i = 1; i < nn; ++i) {
        const auto& a = dt[i];
        const auto& b = dt[nn - i];
        for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
            if (a[c1] == 0) continue;
            i128* row = g.v.data() + (c1 << m);
            i128 ac = a[c1];
            for (std::uint64_t c2 = 0; c2 < cells; ++c2)
                row[c2] = add_checked(row[c2], mul_checked(ac, b[c2]));
        }
    }
    g.den = i128(nn);
    return g;
}

Grid2D marcinkiewicz(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("marcinkiewicz requires n >= 1");
    require_min_res(n, m);
    std::uint64_t nn = std::uint64_t(n.value());
    std::uint64_t cells = std::uint64_t(1) << m;
    Spectrum2D s{m, std::vector<i128>(std::size_t(1) << (2 * m), 0), 1};
    for (std::uint64_t i = 0; i < std::min(nn, cells); ++i)
        for (std::uint64_t j = 0; std::max(i, j) + 1 < nn && j < cells; ++j)
            s.at(i, j) = i128(nn - 1 - std::max(i, j));
    Grid2D g = fwht_inverse(s);
    g.den = mul_checked(g.den, i128(nn));
    return g;
}

Grid2D marcinkiewicz_direct(Nat n, int m) {
    if (n.value() == 0) throw std::domain_error("marcinkiewicz requires n >= 1");
    require_min_res(n, m);
    std::uint64_t nn = std::uint64_t(n.value());
    auto dt = dirichlet_table(nn == 0 ? 0 : nn - 1, m);
    Grid2D g = zeros2(m);
    std::uint64_t cells = std::uint64_t(1) << m;
    for (std::uint64_t k = 0; k < nn; ++k) {
        const auto& a = dt[k];
        for (std::uint64_t c1 = 0; c1 < cells; ++c1) {
            if (a[c1] == 0) continue;
            i128* row = g.v.data() + (c1 << m);
            i128 ac = a[c1];
            for (std::uint64_t c2 = 0; c2 < cells; ++c2)
                row[c2] = add_checked(row[c2], mul_checked(ac, a[c2]));
        }
    }
    g.den = i128(nn);
    return g;
}

}  // namespace triwalsh
