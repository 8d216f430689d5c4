#pragma once

#include "ratfunc.hpp"
#include "series.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gftree {

// Reconstruct a rational function from its Taylor coefficients c[0..N].
// The last `reserve` coefficients are held out: candidates are built from
// the first N+1-reserve coefficients (extended Euclid on x^M and the
// truncated series, which walks the Pade candidates in order of increasing
// denominator degree) and accepted only if they also reproduce the held-out
// tail exactly.
// Degrees above max_deg are rejected (max_deg < 0 means no cap).
inline std::optional<RatFunc> pade_reconstruct(const std::vector<Rat>& c, int reserve,
                                               int max_deg = -1) {
    int total = static_cast<int>(c.size());
    int m = total - reserve;
    if (m < 1) return std::nullopt;
    Poly cpoly;
    {
        std::vector<Rat> head(c.begin(), c.begin() + m);
        cpoly = Poly(std::move(head));
    }
    Poly r_prev = Poly::monomial(m), v_prev; // v_prev = 0
    Poly r_cur = cpoly, v_cur{1};
    auto validate = [&](const Poly& num, const Poly& den) -> std::optional<RatFunc> {
        if (den.is_zero() || den.coeff(0) == 0) return std::nullopt;
        RatFunc f(num, den);
        if (f.den().coeff(0) == 0) return std::nullopt;
        if (max_deg >= 0 && (f.num().degree() > max_deg || f.den().degree() > max_deg))
            return std::nullopt;
        std::vector<Rat> got = f.series_expand(total - 1);
        for (int i = 0; i < total; ++i)
            if (got[static_cast<size_t>(i)] != c[static_cast<size_t>(i)]) return std::nullopt;
        return f;
    };
    while (true) {
        if (auto f = validate(r_cur, v_cur)) return f;
        if (r_cur.is_zero()) return std::nullopt;
        auto [q, r] = Poly::divmod(r_prev, r_cur);
        Poly v_next = v_prev - q * v_cur;
        r_prev = r_cur;
        v_prev = v_cur;
        r_cur = r;
        v_cur = v_next;
        if (r_prev.is_zero()) return std::nullopt;
        if (max_deg >= 0 && v_cur.degree() > max_deg)
            return std::nullopt; // denominator degree only grows from here
    }
}

// Find polynomials p0, p1, p2 of degree <= deg, not all zero, with
// p0 + p1 G + p2 G^2 = O(x^{N+1}) for the series G given by c[0..N].
// The last `reserve` coefficients again act as a consistency check only.
inline std::optional<std::array<Poly, 3>>
algebraic_fit_deg2(const std::vector<Rat>& c, int deg, int reserve) {
    int total = static_cast<int>(c.size());
    int m = total - reserve;
    int nvars = 3 * (deg + 1);
    if (m < nvars) return std::nullopt; // not enough data to pin anything down
    Series g{std::vector<Rat>(c)};
    Series g2 = g * g;
    // row i: coefficient of x^i in p0 + p1 G + p2 G^2, i = 0..total-1
    std::vector<std::vector<Rat>> rows(
        static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(nvars), Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int d = 0; d <= deg; ++d) {
            if (d == i) rows[i][static_cast<size_t>(d)] = 1;
            if (i - d >= 0) {
                rows[i][static_cast<size_t>(deg + 1 + d)] = g[i - d];
                rows[i][static_cast<size_t>(2 * (deg + 1) + d)] = g2[i - d];
            }
        }
    }
    // nullspace over Q by Gauss-Jordan
    std::vector<int> pivot_cols;
    int r = 0;
    for (int col = 0; col < nvars && r < m; ++col) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(pr)]);
        Rat inv = Rat(1) / rows[static_cast<size_t>(r)][static_cast<size_t>(col)];
        for (int j = col; j < nvars; ++j) rows[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            Rat f = rows[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int j = col; j < nvars; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivot_cols.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(nvars), false);
    for (int pc : pivot_cols) is_pivot[static_cast<size_t>(pc)] = true;
    int free_col = -1;
    for (int col = 0; col < nvars; ++col)
        if (!is_pivot[static_cast<size_t>(col)]) { free_col = col; break; }
    if (free_col < 0) return std::nullopt;
    std::vector<Rat> sol(static_cast<size_t>(nvars), Rat(0));
    sol[static_cast<size_t>(free_col)] = 1;
    for (size_t i = 0; i < pivot_cols.size(); ++i)
        sol[static_cast<size_t>(pivot_cols[i])] = -rows[i][static_cast<size_t>(free_col)];
    std::array<Poly, 3> p;
    for (int k = 0; k < 3; ++k) {
        std::vector<Rat> coeffs(sol.begin() + k * (deg + 1), sol.begin() + (k + 1) * (deg + 1));
        p[static_cast<size_t>(k)] = Poly(std::move(coeffs));
    }
    // consistency check on the full series, including the reserved tail
    Series check = Series(std::vector<Rat>(p[0].series_pad(total - 1)))
                 + Series(std::vector<Rat>(p[1].series_pad(total - 1))) * g
                 + Series(std::vector<Rat>(p[2].series_pad(total - 1))) * g2;
    for (int i = 0; i < total; ++i)
        if (check[i] != 0) return std::nullopt;
    return p;
}

} // namespace gftree
