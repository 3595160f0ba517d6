#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "siegel/errors.hpp"
#include "siegel/quadform.hpp"

using namespace siegel;

namespace {

HalfIntegralMatrix M(const char* s) { return HalfIntegralMatrix::parse(s); }

ZPoly Z(std::vector<long> c)
{
    std::vector<Integer> v(c.begin(), c.end());
    return ZPoly(std::move(v));
}

} // namespace

TEST_CASE("chi_local")
{
    CHECK(chi_local(Rational(4), 3) == 1);
    CHECK(chi_local(Rational(2), 3) == -1);  // 2 is a nonsquare unit mod 3
    CHECK(chi_local(Rational(3), 3) == 0);
    CHECK(chi_local(Rational(-3), 2) == -1);  // -3 = 5 mod 8
    CHECK(chi_local(Rational(-7), 2) == 1);   // -7 = 1 mod 8
    CHECK(chi_local(Rational(-1), 2) == 0);
    CHECK(chi_local(make_rational(9, 4), 5) == 1);
}

TEST_CASE("local invariants of small forms")
{
    const auto inv = invariants_of(M("2,1;1,2"), 3);
    CHECK(inv.r == 2);
    CHECK(inv.D == 3);
    CHECK(inv.d == -3);
    CHECK(inv.f == 1);
    CHECK(inv.chi == 0);
    CHECK(inv.degree == 0);

    const auto i2 = invariants_of(M("2,0;0,2"), 2);
    CHECK(i2.D == 4);
    CHECK(i2.d == -4);
    CHECK(i2.degree == 0);

    const auto i5 = invariants_of(M("10,0;0,10"), 5);
    CHECK(i5.content == 1);
    CHECK(i5.f == 5);
    CHECK(i5.degree == 2);

    const auto odd = invariants_of(M("6"), 3);
    CHECK(odd.r == 1);
    CHECK(odd.degree == 1);
    CHECK_THROWS_AS(invariants_of(M("2,2;2,2"), 3), domain_error);
}

TEST_CASE("closed forms: rank 0 and unimodular cases")
{
    CHECK(f_poly_closed(HalfIntegralMatrix(0, {}), 5).F == Z({1}));
    // det 2T prime to l: F = 1
    CHECK(f_poly_closed(M("2,1;1,2"), 5).F == Z({1}));
    CHECK(f_poly_closed(M("2"), 3).F == Z({1}));
    // l = 3 ramified in Q(sqrt -3): degree 0 since f = 1
    CHECK(f_poly_closed(M("2,1;1,2"), 3).F == Z({1}));
}

TEST_CASE("oracle matches closed form on random rank <= 2 forms")
{
    oracle::Gen gen(41);
    int tested = 0;
    for (int it = 0; it < 120 && tested < 60; ++it) {
        const int r = static_cast<int>(gen.uniform(1, 2));
        const auto T = gen.positive_definite(r, 3);
        for (std::int64_t l : {2, 3, 5}) {
            const auto inv = invariants_of(T, l);
            if (valuation(inv.D, l) > 3)
                continue;
            const auto o = f_poly_oracle(T, l);
            CHECK_MESSAGE(o.F == f_poly_closed(T, l).F, T.to_string() << " at l = " << l);
            CHECK(o.F.degree() == inv.degree);
            CHECK(o.F[0] == 1);
            ++tested;
        }
    }
    CHECK(tested >= 30);
}

TEST_CASE("F_l depends only on the GL_r(Z) class")
{
    oracle::Gen gen(43);
    for (int it = 0; it < 30; ++it) {
        const int r = static_cast<int>(gen.uniform(1, 3));
        const auto T = gen.positive_definite(r, 3);
        const auto S = T.transform(gen.unimodular(r));
        for (std::int64_t l : {3, 5}) {
            if (r == 3 && valuation(invariants_of(T, l).D, l) > 2)
                continue;
            CHECK_MESSAGE(f_poly(S, l).F == f_poly(T, l).F, T.to_string() << " at l = " << l);
        }
    }
}

TEST_CASE("functional equation holds with the i <= j Hasse invariant")
{
    oracle::Gen gen(47);
    for (int it = 0; it < 40; ++it) {
        const int r = static_cast<int>(gen.uniform(1, 3));
        const auto T = gen.positive_definite(r, 3);
        for (std::int64_t l : {2, 3, 5}) {
            if (r == 3 && (l == 2 || valuation(invariants_of(T, l).D, l) > 2))
                continue;
            const auto chk = functional_equation_check(T, l);
            CHECK_MESSAGE(chk.ok, T.to_string() << " at l = " << l << ": " << chk.diagnostic);
        }
    }
}

TEST_CASE("the strict i < j Hasse invariant breaks the odd-rank functional equation")
{
    // For T = (3) at l = 2 the two normalizations differ by (3, 3)_2 = -1.
    const auto T = M("6");
    const auto inv = invariants_of(T, 2);
    REQUIRE(hasse_strict(T, 2) != inv.hasse);
    const auto F = f_poly(T, 2).F;
    CHECK(functional_equation_check(T, F, 2, inv.hasse).ok);
    CHECK_FALSE(functional_equation_check(T, F, 2, hasse_strict(T, 2)).ok);
}

TEST_CASE("density method matches the oracle in rank 3")
{
    for (const char* s : {"2,1,0;1,2,0;0,0,2", "2,0,0;0,2,0;0,0,6", "2,1,1;1,2,1;1,1,2", "2,0,0;0,6,0;0,0,6"}) {
        const auto T = M(s);
        for (std::int64_t l : {3, 5}) {
            if (valuation(invariants_of(T, l).D, l) > 3)
                continue;
            CHECK_MESSAGE(f_poly_density(T, l).F == f_poly_oracle(T, l).F, s << " at l = " << l);
        }
    }
}

TEST_CASE("f_poly picks a method and memoizes")
{
    const auto a = f_poly(M("2,0;0,18"), 3);
    CHECK(a.method == "closed");
    CHECK(a.F.degree() == invariants_of(M("2,0;0,18"), 3).degree);
    const auto b = f_poly(M("2,1;1,8"), 2);
    CHECK(b.oracle_verified);
    const auto c = f_poly(M("2,0,0;0,2,0;0,0,6"), 3);
    CHECK(c.method == "density");
    CHECK(f_poly(M("2,0;0,18"), 3).F == a.F);
}

TEST_CASE("oracle range is enforced")
{
    CHECK_THROWS_AS(f_poly_oracle(M("2,0,0,0;0,2,0,0;0,0,2,0;0,0,0,2"), 3), scope_error);
    CHECK_THROWS_AS(f_poly_oracle(M("2,0;0,2"), 3, 10), bound_error);
}

TEST_CASE("stabilization identity: sum form equals closed form")
{
    for (std::int64_t p : {3, 5})
        for (const char* s : {"2", "6", "2,1;1,2", "2,0;0,4", "2,0;0,6", "2,1,0;1,2,0;0,0,2"})
            CHECK_MESSAGE(s_poly_sum(M(s), p) == s_poly_closed(M(s), p), s << " at p = " << p);
}

TEST_CASE("block recursion in rank 3")
{
    const auto r = katsurada_recursion_check(M("2,1;1,2"), M("2"), 3);
    CHECK_MESSAGE(r.ok, r.diagnostic);
    const auto r5 = katsurada_recursion_check(M("2,0;0,2"), M("2"), 5);
    CHECK_MESSAGE(r5.ok, r5.diagnostic);
}
