#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "siegel/eisenstein.hpp"
#include "siegel/errors.hpp"

using namespace siegel;

namespace {

HalfIntegralMatrix M(const char* s) { return HalfIntegralMatrix::parse(s); }
HalfIntegralMatrix one(std::int64_t m) { return HalfIntegralMatrix::diagonal({m}); }

} // namespace

TEST_CASE("spec validation")
{
    CHECK_NOTHROW(EisensteinSpec::make(2, 4));
    CHECK_THROWS_AS(EisensteinSpec::make(2, 3), domain_error);   // kappa <= n + 1
    CHECK_THROWS_AS(EisensteinSpec::make(1, 5), domain_error);   // odd weight, trivial chi
    CHECK_THROWS_AS(EisensteinSpec::make(1, 4, CharacterSpec::teichmuller_power(1, 5)), domain_error);
    CHECK_THROWS_AS(EisensteinSpec::make(1, 4, CharacterSpec::kronecker(Integer(5))), scope_error);
    CHECK(EisensteinSpec::make(1, 5, CharacterSpec::teichmuller_power(1, 5)).level() == 5);
}

TEST_CASE("constant terms from the Bernoulli oracle")
{
    CHECK(constant_term(EisensteinSpec::make(1, 4)) == make_rational(1, 240));
    CHECK(constant_term(EisensteinSpec::make(1, 6)) == make_rational(-1, 504));
    CHECK(constant_term(EisensteinSpec::make(1, 8)) == make_rational(1, 480));
    for (int k = 4; k <= 20; k += 2)
        CHECK(constant_term(EisensteinSpec::make(1, k)) == oracle::zeta_neg(static_cast<unsigned>(k)) / 2);
    // genus 2: zeta(1-k) zeta(3-2k) / 2
    for (int k = 4; k <= 12; k += 2) {
        Rational e = oracle::zeta_neg(static_cast<unsigned>(k)) * oracle::zeta_neg(static_cast<unsigned>(2 * k - 2)) / 2;
        e.canonicalize();
        CHECK(constant_term(EisensteinSpec::make(2, k)) == e);
    }
    CHECK(constant_term(EisensteinSpec::make(2, 4)) == make_rational(-1, 60480));
    CHECK(constant_term(EisensteinSpec::make(3, 6)) == make_rational(1, 133056));
}

TEST_CASE("genus 1 coefficients are divisor sums")
{
    for (int k : {4, 6, 8, 10})
        for (std::int64_t m = 1; m <= 30; ++m)
            CHECK(fourier_coeff(EisensteinSpec::make(1, k), one(m)) ==
                  Rational(oracle::sigma(static_cast<unsigned>(k - 1), m)));
}

TEST_CASE("genus 2 values")
{
    const auto s = EisensteinSpec::make(2, 4);
    CHECK(fourier_coeff(s, M("2,1;1,2")) == make_rational(-2, 9));
    Rational ratio = fourier_coeff(s, M("2,1;1,2")) / constant_term(s);
    CHECK(ratio == 13440);
    CHECK(fourier_coeff(s, M("2,0;0,0")) == make_rational(-1, 252));
    CHECK(fourier_coeff(s, M("0,0;0,0")) == constant_term(s));
}

TEST_CASE("Siegel Phi compatibility: rank-1 coefficients in genus 2 follow sigma_{k-1}")
{
    for (int k : {4, 6}) {
        const auto s = EisensteinSpec::make(2, k);
        const Rational base = fourier_coeff(s, M("2,0;0,0"));
        for (std::int64_t m = 1; m <= 12; ++m) {
            const auto T = HalfIntegralMatrix::diagonal({m, 0});
            CHECK(fourier_coeff(s, T) == base * Rational(oracle::sigma(static_cast<unsigned>(k - 1), m)));
        }
    }
}

TEST_CASE("coefficients are GL_n(Z)-invariant")
{
    oracle::Gen gen(53);
    for (int it = 0; it < 25; ++it) {
        const int n = static_cast<int>(gen.uniform(2, 3));
        const auto T = gen.positive_definite(n, 2);
        const auto U = gen.unimodular(n);
        const auto s = EisensteinSpec::make(n, 6);
        CHECK_MESSAGE(fourier_coeff(s, T.transform(U)) == fourier_coeff(s, T), T.to_string());
    }
}

TEST_CASE("coefficient data")
{
    const auto d = coefficient_data(2, M("2,1;1,2"));
    CHECK(d.r == 2);
    CHECK(d.d == -3);
    CHECK(d.primes.empty());
    const auto z = coefficient_data(3, M("2,0,0;0,0,0;0,0,0"));
    CHECK(z.r == 1);
    CHECK(z.inner == M("2"));
}

TEST_CASE("Teichmueller Nebentypus in genus 1 matches sum chi(d) d^{k-1}")
{
    const int M_ = 8;
    const auto chi = CharacterSpec::teichmuller_power(1, 5);
    const auto s = EisensteinSpec::make(1, 5, chi);
    for (std::int64_t m = 1; m <= 12; ++m) {
        PadicInt acc(5, M_, Integer(0));
        for (std::int64_t d = 1; d <= m; ++d)
            if (m % d == 0 && d % 5 != 0)
                acc = acc + teichmuller(Integer(d), 5, M_) * PadicInt(5, M_, Integer(d * d * d * d));
        CHECK(agreement(fourier_coeff_chi(s, one(m), M_), PadicNumber::from_padic_int(acc)) >= M_);
    }
    // the level-p coefficient only sees divisors prime to p
    CHECK(agreement(fourier_coeff_chi(s, one(5), M_), fourier_coeff_chi(s, one(1), M_)) >= M_);
    const auto c = constant_term_padic(s, M_);
    const auto L = dirichlet_L_neg_padic(5, chi, false, 5, M_ + 2);
    CHECK(agreement(c * PadicNumber::from_rational(5, Rational(2), M_), L) >= M_ - 1);
}

TEST_CASE("Nebentypus excludes characters with trivial square")
{
    const auto s = EisensteinSpec::make(1, 6, CharacterSpec::teichmuller_power(2, 5));
    CHECK_THROWS_AS(fourier_coeff_chi(s, one(1), 6), domain_error);
}

TEST_CASE("genus 1 stabilization")
{
    for (std::int64_t p : {5, 7})
        for (int k : {4, 6}) {
            Rational c = dirichlet_L_neg(static_cast<unsigned>(k), CharacterSpec::trivial(), p) / 2;
            c.canonicalize();
            CHECK(stabilized_coeff(1, k, p, one(0)) == c);
            for (std::int64_t m = 1; m <= 20; ++m)
                CHECK(stabilized_coeff(1, k, p, one(m)) ==
                      Rational(oracle::sigma_prime_to(static_cast<unsigned>(k - 1), m, p)));
        }
    CHECK(stabilized_coeff(1, 4, 5, one(0)) == make_rational(-31, 60));
    CHECK(stabilized_coeff(1, 4, 5, one(5)) == 1);
    CHECK_THROWS_AS(stabilized_coeff(1, 4, 2, one(1)), scope_error);
}

TEST_CASE("stabilized coefficients are semi-ordinary")
{
    for (int n : {1, 2})
        for (const auto& T : enumerate_psd(n, 2))
            CHECK(stabilized_coeff(n, 6, 5, T.scaled(5)) == stabilized_coeff(n, 6, 5, T));
}

TEST_CASE("q-expansion container")
{
    QExpansion<Rational> e(2, 3, "x");
    e.insert(M("2,0;0,0"), Rational(1));
    CHECK_THROWS_AS(e.insert(M("2,0;0,0"), Rational(2)), domain_error);
    CHECK_THROWS_AS(e.insert(M("2"), Rational(2)), domain_error);
    CHECK_THROWS_AS(e.insert(M("2,3;3,2"), Rational(2)), domain_error);
    CHECK_THROWS_AS(e.at(M("4,0;0,0")), bound_error);
    CHECK(e.at(M("2,0;0,0")) == 1);
}

TEST_CASE("expansions and U_p")
{
    const auto e = eisenstein_expansion(EisensteinSpec::make(1, 4), 10);
    CHECK(e.size() == 11);
    CHECK(e.at(one(0)) == make_rational(1, 240));
    const auto u = u_pn_apply(e, 5);
    CHECK(u.bound() == 2);
    CHECK(u.at(one(1)) == 126);
    CHECK(u.at(one(2)) == Rational(oracle::sigma(3, 10)));
    CHECK_THROWS_AS(u.at(one(3)), bound_error);
    // serial and threaded builds agree
    CHECK(eisenstein_expansion(EisensteinSpec::make(2, 6), 3, 1) ==
          eisenstein_expansion(EisensteinSpec::make(2, 6), 3, 4));
}

TEST_CASE("operator and Q*-paths reproduce the closed form")
{
    for (int n : {1, 2}) {
        const auto spec = EisensteinSpec::make(n, 6);
        const auto closed = stabilized_expansion(n, 6, 5, 2);
        const auto src = eisenstein_expansion_orbit(spec, 5, 2, q_star_depth(n));
        CHECK(stabilize_via_operator(n, 6, 5, src) == closed);
        CHECK(stabilize_via_q_star(n, 6, 5, src) == closed);
    }
    CHECK(operator_depth(2) == 2);
    CHECK(q_star_depth(1) == 1);
    CHECK(q_star_depth(2) == 2);
    CHECK(q_star_depth(3) == 6);
}

TEST_CASE("orbit expansion agrees with the full expansion on shared keys")
{
    const auto spec = EisensteinSpec::make(2, 4);
    const auto orb = eisenstein_expansion_orbit(spec, 3, 1, 2);
    const auto full = eisenstein_expansion(spec, 9);
    for (const auto& T : orb.keys())
        CHECK(orb.at(T) == full.at(T));
    CHECK(orb.bound() == 9);
}
