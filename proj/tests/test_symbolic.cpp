#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gftree/fit.hpp"
#include "gftree/linear.hpp"
#include "gftree/quadext.hpp"
#include "gftree/tpoly.hpp"

#include <random>

using namespace gftree;

namespace {

Series to_series(const std::vector<Rat>& c) { return Series(std::vector<Rat>(c)); }

Series poly_series(const Poly& p, int order) {
    Series s(order);
    for (int i = 0; i <= std::min(order, p.degree()); ++i) s[i] = p.coeff(i);
    return s;
}

RatFunc random_ratfunc(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5);
    auto rand_poly = [&](bool unit_const) {
        std::vector<Rat> c(static_cast<size_t>(deg(rng)) + 1);
        for (auto& v : c) v = coef(rng);
        if (unit_const || (c.size() == 1 && c[0] == 0)) c[0] = 1;
        return Poly(std::move(c));
    };
    return RatFunc(rand_poly(false), rand_poly(true));
}

} // namespace

TEST_CASE("rational function arithmetic and normalization") {
    RatFunc f(Poly{0, 1}, Poly{1, -2}); // x/(1-2x)
    CHECK(f.series_expand(5) == std::vector<Rat>{0, 1, 2, 4, 8, 16});

    RatFunc g(Poly{0, 1, -2}, Poly{1, -1} * Poly{1, -3});
    CHECK(g.den().coeff(0) == 1);
    CHECK(g == RatFunc(Poly{0, 2, -4}, Poly{2, -8, 6}));

    RatFunc sum = RatFunc(Poly{0, 1}, Poly{1, -1}) +
                  RatFunc(Poly{0, 0, 1}, Poly{1, -1} * Poly{1, -1} * Poly{1, -1});
    CHECK(sum.series_expand(6) == std::vector<Rat>{0, 1, 2, 4, 7, 11, 16});

    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        RatFunc a = random_ratfunc(rng, 3), b = random_ratfunc(rng, 3);
        CHECK((a + b) - b == a);
        CHECK((a * b).series_expand(10) ==
              (to_series(a.series_expand(10)) * to_series(b.series_expand(10))).coeffs());
        if (!a.is_zero()) CHECK(a * a.inverse() == RatFunc(1));
        CHECK(a * (b + RatFunc(1)) == a * b + a);
    }
}

TEST_CASE("kernel root series") {
    Series cat = kernel_t0(1, 20);
    Rat c = 1;
    for (int n = 0; n <= 20; ++n) { // Catalan recurrence C_{n+1} = C_n 2(2n+1)/(n+2)
        CHECK(cat[n] == c);
        c = c * 2 * (2 * n + 1) / (n + 2);
    }
    for (int a = 0; a <= 3; ++a) {
        int order = 24;
        Series t = kernel_t0(a, order);
        Series poly(order); // 1 + x - a x
        poly[0] = 1;
        poly[1] = Rat(1) - a;
        Series res = Series::x(order) * poly * t * t - poly * t + Series::constant(1, order);
        CHECK(res == Series(order));
        CHECK(t[0] == 1);
        CHECK(t[1] == a);
        CHECK(t[2] == Rat(a) * a + 1);
    }
}

TEST_CASE("quadratic extension arithmetic") {
    QuadExt t0 = QuadExt::t0(1);
    QuadExt xq = QuadExt(RatFunc::x());
    CHECK((xq * t0 * t0 - t0 + QuadExt(1)).is_zero()); // x t0^2 - t0 + 1 = 0 at a=1
    CHECK((t0 - t0).is_zero());
    CHECK((t0 * t0.inverse() - QuadExt(1)).is_zero());

    // series of t0 through the extension matches the direct kernel iteration
    std::vector<Rat> s = t0.series_expand(16);
    Series direct = kernel_t0(1, 16);
    for (int i = 0; i <= 16; ++i) CHECK(s[static_cast<size_t>(i)] == direct[i]);

    // x^3 - 1 + C(x) as an extension element
    QuadExt g = QuadExt(RatFunc(Poly{-1, 0, 0, 1})) + t0;
    std::vector<Rat> gs = g.series_expand(6);
    CHECK(gs == std::vector<Rat>{0, 1, 2, 6, 14, 42, 132});
}

TEST_CASE("bivariate rational functions in t") {
    TRat t = TRat::t();
    TRat geo = (TRat(1) - TRat(RatFunc::x()) * t).inverse(); // 1/(1-xt)
    for (int m = 1; m <= 3; ++m)
        CHECK((TRat(RatFunc::xpow(m)) * geo).coeff_t1() == RatFunc::xpow(m + 1));
    CHECK((TRat(RatFunc::xpow(2)) * t * geo).eval_t(RatFunc(0)) == RatFunc(0));

    QuadExt t0 = QuadExt::t0(1);
    QuadExt lhs = geo.eval_t(t0);
    QuadExt rhs = (QuadExt(1) - QuadExt(RatFunc::x()) * t0).inverse();
    CHECK((lhs - rhs).is_zero());

    TRat prod = (geo - TRat(1)) * (t * TRat(RatFunc::x())).inverse();
    CHECK(prod == geo); // (1/(1-xt) - 1)/(xt) = 1/(1-xt)
}

TEST_CASE("linear system solving leaves zero residuals") {
    using LF = LinearForm<RatFunc>;
    // identity system
    auto idsol = solve_linear_forms<RatFunc>({LF::unknown(0) - LF(RatFunc(Poly{1, 2}))});
    CHECK(idsol.at(0) == RatFunc(Poly{1, 2}));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4;
        std::vector<LF> eqs;
        for (int i = 0; i < n; ++i) {
            LF eq(random_ratfunc(rng, 2));
            eq += LF::unknown(i) * RatFunc(1); // unit diagonal keeps it nonsingular at x=0
            for (int j = 0; j < n; ++j)
                if (j != i) eq += LF::unknown(j) * (RatFunc::x() * random_ratfunc(rng, 1));
            eqs.push_back(eq);
        }
        auto sol = solve_linear_forms(eqs);
        for (const auto& eq : eqs) {
            LF res = eq.substitute(sol);
            CHECK(res.terms.empty());
            CHECK(res.cst.is_zero());
        }
    }

    CHECK_THROWS_AS(solve_linear_forms<RatFunc>(
                        {LF::unknown(0) + LF::unknown(1), LF::unknown(0) + LF::unknown(1)}),
                    SingularSystem);
}

TEST_CASE("Pade reconstruction") {
    std::vector<Rat> geo{0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
    auto f = pade_reconstruct(geo, 4);
    REQUIRE(f.has_value());
    CHECK(*f == RatFunc(Poly{0, 1}, Poly{1, -2}));

    Series cat = kernel_t0(1, 11);
    CHECK(!pade_reconstruct(cat.coeffs(), 4, 4).has_value());

    RatFunc target(Poly{0, 1, -1}, Poly{1, -3, 1});
    auto g = pade_reconstruct(target.series_expand(12), 4);
    REQUIRE(g.has_value());
    CHECK(*g == target);

    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        RatFunc r = random_ratfunc(rng, 6);
        auto back = pade_reconstruct(r.series_expand(2 * 6 + 2 + 4), 4);
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
}

TEST_CASE("degree-2 algebraic fitting") {
    int order = 24;
    Series cat = kernel_t0(1, order);
    std::vector<Rat> g = cat.coeffs();
    g[0] = 0; // G = C(x) - 1
    auto fit = algebraic_fit_deg2(g, 2, 4);
    REQUIRE(fit.has_value());
    auto [p0, p1, p2] = *fit;
    CHECK(!p2.is_zero());
    Series gs = to_series(g);
    Series res = poly_series(p0, order) + poly_series(p1, order) * gs +
                 poly_series(p2, order) * gs * gs;
    CHECK(res == Series(order));
    // the relation pins the same curve as x G^2 + (2x-1) G + x = 0
    Poly q0{0, 1}, q1{-1, 2}, q2{0, 1};
    CHECK(p0 * q1 == p1 * q0);
    CHECK(p0 * q2 == p2 * q0);

    // rational series: the p2 = 0 branch recovers the fraction
    RatFunc r(Poly{0, 1}, Poly{1, -2});
    auto rf = algebraic_fit_deg2(r.series_expand(order), 1, 4);
    REQUIRE(rf.has_value());
    Series rs = to_series(r.series_expand(order));
    Series rres = poly_series((*rf)[0], order) + poly_series((*rf)[1], order) * rs +
                  poly_series((*rf)[2], order) * rs * rs;
    CHECK(rres == Series(order));

    // x^3 - 1 + C(x) satisfies a degree-2 relation as well; its p0 has
    // degree 7, so allow that degree and supply enough coefficients
    int horder = 40;
    std::vector<Rat> h = kernel_t0(1, horder).coeffs();
    h[0] -= 1;
    h[3] += 1;
    auto hf = algebraic_fit_deg2(h, 7, 4);
    REQUIRE(hf.has_value());
    Series hs = to_series(h);
    Series hres = poly_series((*hf)[0], horder) + poly_series((*hf)[1], horder) * hs +
                  poly_series((*hf)[2], horder) * hs * hs;
    CHECK(hres == Series(horder));
    CHECK(!(*hf)[2].is_zero());
}
