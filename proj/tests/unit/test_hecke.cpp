#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "siegel/eisenstein.hpp"
#include "siegel/hecke.hpp"
#include "siegel/stabilization.hpp"

using namespace siegel;

TEST_CASE("Satake exponents")
{
    const auto s = satake_params(2, 4, 2);
    CHECK(s.exponents == std::vector<std::int64_t>{2, -2, 3});
    CHECK(s.psi(0) == 4);
    CHECK(s.psi(1) == make_rational(1, 4));
    CHECK(s.psi(2) == 8);
    CHECK(satake_params(1, 6, 3).exponents.size() == 2);
}

TEST_CASE("similitude normalization over a grid")
{
    for (int n = 1; n <= 5; ++n)
        for (int k = n + 2; k <= 14; ++k)
            for (std::int64_t l : {2, 3, 5, 7}) {
                const auto s = satake_params(n, k, l);
                CHECK(s.exponents.size() == static_cast<std::size_t>(n + 1));
                CHECK(s.similitude_exponent() == expected_similitude_exponent(n, k));
            }
    CHECK(expected_similitude_exponent(2, 4) == 5);
}

TEST_CASE("genus 1 Hecke polynomial is 1 - sigma_{k-1}(l) Y + l^{k-1} Y^2")
{
    for (int k : {4, 6, 8})
        for (std::int64_t l : {2, 3, 5, 7}) {
            const auto h = hecke_polynomial(satake_params(1, k, l));
            REQUIRE(h.poly.degree() == 2);
            CHECK(h.poly[0] == 1);
            CHECK(h.poly[1] == -Rational(oracle::sigma(static_cast<unsigned>(k - 1), l)));
            CHECK(h.poly[2] == Rational(ipow(l, static_cast<unsigned>(k - 1))));
            const auto q = q_star(1, k, l);
            CHECK(q.poly.degree() == 1);
            CHECK(q.poly[1] == -Rational(ipow(l, static_cast<unsigned>(k - 1))));
        }
}

TEST_CASE("Hecke polynomial shape")
{
    for (int n = 1; n <= 4; ++n) {
        const auto h = hecke_polynomial(satake_params(n, n + 3, 3));
        CHECK(h.poly.degree() == (1 << n));
        CHECK(h.factor_exponents.size() == static_cast<std::size_t>(1 << n));
        CHECK(std::is_sorted(h.factor_exponents.begin(), h.factor_exponents.end()));
        CHECK(h.poly[0] == 1);
        // the reciprocal roots are the l^e, so the leading coefficient is +-l^{sum e}
        std::int64_t sum = 0;
        for (auto e : h.factor_exponents)
            sum += e;
        Rational lead = rpow(3, static_cast<int>(sum));
        if (h.factor_exponents.size() % 2)
            lead = -lead;
        CHECK(h.poly[static_cast<std::size_t>(h.poly.degree())] == lead);
        const int d = q_star_depth(n);
        CHECK(q_star(n, n + 3, 3).poly.degree() == d);
        CHECK(q_star_reflected(n, n + 3, 3).degree() == d);
    }
}

TEST_CASE("R(p^{k-n-1}, Y) divides Q*(Y)")
{
    for (int n = 1; n <= 4; ++n)
        for (int k = n + 2; k <= 12; ++k) {
            if (k % 2)
                continue;
            for (std::int64_t p : {2, 3, 5, 7}) {
                const auto r = divisibility_check(n, k, p);
                CHECK_MESSAGE(r.divides, "n = " << n << " k = " << k << " p = " << p);
                CHECK(r.quotient * stabilization_polys(n, p).R.at_x(rpow(p, k - n - 1)) ==
                      q_star(n, k, p).poly);
            }
        }
    const auto q = divisibility_check(3, 6, 2).quotient;
    CHECK(q.coeffs() == std::vector<Rational>{1, -392, 35840, -262144});
}

TEST_CASE("Zharkovskaya relation for odd n")
{
    for (int n : {3, 5})
        for (int k = n + 2; k <= 12; ++k)
            for (std::int64_t l : {2, 3, 5})
                CHECK_MESSAGE(zharkovskaya_check(n, k, l), "n = " << n << " k = " << k << " l = " << l);
}

TEST_CASE("stabilization polynomials")
{
    const auto s = stabilization_polys(1, 5);
    CHECK(s.R == BiPoly::linear_factor(Integer(5), 1));  // 1 - 5XY
    CHECK(s.R.degree_y() == 1);
    CHECK(stab_R_coefficients(2, 3) == std::vector<Integer>{9, 27});
    CHECK(s.R.reflected(1).reflected(1) == s.R);
    CHECK(stab_P1(0, 5) == ZPoly(std::vector<Integer>{1}));
    const auto prod = BiPoly::linear_factor(Integer(2), 1) * BiPoly::linear_factor(Integer(3), 2);
    CHECK(prod.degree_y() == 2);
    CHECK(prod.at_y(Integer(0)) == ZPoly(std::vector<Integer>{1}));
}
