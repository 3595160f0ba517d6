#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "siegel/errors.hpp"
#include "siegel/lambda.hpp"

using namespace siegel;

namespace {

LambdaElement random_element(oracle::Gen& gen, std::int64_t p, int M, int N)
{
    std::vector<Integer> c;
    for (int i = 0; i < N; ++i)
        c.emplace_back(gen.uniform(0, 1'000'000'000));
    return LambdaElement(p, M, N, std::min(M, N), c);
}

Rational node(std::int64_t p, int k) { return Rational(ipow(1 + p, static_cast<unsigned>(k)) - 1); }

} // namespace

TEST_CASE("Lambda elements: ring laws")
{
    oracle::Gen gen(61);
    for (int it = 0; it < 30; ++it) {
        const auto a = random_element(gen, 5, 6, 5);
        const auto b = random_element(gen, 5, 6, 5);
        const auto c = random_element(gen, 5, 6, 5);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        CHECK(a * LambdaElement::constant(5, 6, 5, Rational(1)) == a);
    }
    CHECK_THROWS_AS(LambdaElement::zero(5, 6, 5) + LambdaElement::zero(7, 6, 5), domain_error);
}

TEST_CASE("Lambda elements: evaluation matches the exact polynomial")
{
    oracle::Gen gen(67);
    for (int it = 0; it < 30; ++it) {
        std::vector<Rational> c;
        for (int i = 0; i < 4; ++i)
            c.emplace_back(gen.uniform(-50, 50), 1 + 5 * gen.uniform(0, 4) + (i % 2));
        for (auto& x : c)
            x.canonicalize();
        const QPoly f(c);
        const auto L = LambdaElement::from_qpoly(f, 5, 10, 8);
        const Rational x = Rational(5 * gen.uniform(-30, 30));
        CHECK(agreement(L.eval(x), f.eval(x)) >= L.certified());
    }
    const auto L = LambdaElement::constant(5, 6, 4, Rational(3));
    CHECK_THROWS_AS(L.eval(Rational(1)), domain_error);
    CHECK_THROWS_AS(LambdaElement::from_qpoly(QPoly::constant(make_rational(1, 5)), 5, 6, 4), consistency_error);
    CHECK(LambdaElement::constant(5, 6, 4, Rational(25)).min_valuation() == 2);
    CHECK(LambdaElement::zero(5, 6, 4).min_valuation() == 6);
}

TEST_CASE("binomial series (1+X)^s")
{
    const int M = 8, N = 6;
    const int W = M + 2;  // v_5(5!) = 1, plus slack
    CHECK(one_plus_X_pow(PadicInt(5, W, Integer(0)), M, N) == LambdaElement::constant(5, M, N, Rational(1)));
    const auto sq = one_plus_X_pow(PadicInt(5, W, Integer(2)), M, N);
    CHECK(sq.coeffs()[0] == 1);
    CHECK(sq.coeffs()[1] == 2);
    CHECK(sq.coeffs()[2] == 1);
    CHECK(sq.coeffs()[3] == 0);
    // at X = (1+p)^k - 1 the series gives (1+p)^{sk} = <l>^k when s = s(<l>)
    for (std::int64_t l : {2, 3, 7, 11}) {
        const Integer w = teichmuller(Integer(l), 5, W + 1).value();
        const PadicInt angle = PadicInt(5, W + 1, Integer(l)) * PadicInt(5, W + 1, w).inverse();
        const auto s = s_of(angle);
        const auto f = one_plus_X_pow(s, M, N);
        for (int k : {2, 6}) {
            const auto direct = PadicNumber::from_padic_int(angle.pow(Integer(k)).with_precision(M));
            CHECK(agreement(f.eval(node(5, k)), direct) >= f.certified());
        }
    }
    CHECK_THROWS_AS(one_plus_X_pow(PadicInt(5, 3, Integer(2)), M, N), domain_error);
}

TEST_CASE("B polynomial: both factorizations agree")
{
    for (int n = 1; n <= 4; ++n)
        for (std::int64_t p : {3, 5, 7}) {
            const auto B = b_poly(n, p);
            CHECK(B.forms_agree);
            CHECK(B.factors.size() == static_cast<std::size_t>(n / 2 + 1 + n / 2));
            CHECK(B.product[0] == 0);
            CHECK(B.names.size() == B.factors.size());
        }
    const auto B = b_poly(2, 5);
    // sq_1 = (1+p)^{-2}(1+X)^2 - 1
    const Rational inv = make_rational(1, 36);
    CHECK(B.factors[static_cast<std::size_t>(B.sq_index(1))] ==
          QPoly({inv - 1, 2 * inv, inv}));
    CHECK(B.factors[static_cast<std::size_t>(B.lin_index(0))] == QPoly({Rational(0), Rational(1)}));
}

TEST_CASE("branch series: trivial branch reproduces p-stripped zeta values")
{
    LambdaConfig cfg;
    const auto s = branch(Integer(1), 0, 5, cfg);
    CHECK(s->trivial_branch);
    CHECK_FALSE(s->vanishes);
    CHECK(s->held_out.size() >= 2);
    CHECK(s->held_out_valuation >= std::min(cfg.M, cfg.N));
    // Phi = X Psi, Psi((1+p)^4 - 1) = zeta^{5}(-3) = -31/30
    CHECK(branch_target(*s, 4) == make_rational(-31, 30));
    CHECK(agreement(branch_phi_at(*s, 4), node(5, 4) * make_rational(-31, 30)) >= 7);
    CHECK_THROWS_AS(branch_target(*s, 5), domain_error);
    // memoized
    CHECK(branch(Integer(1), 0, 5, cfg).get() == s.get());
}

TEST_CASE("branch series: nontrivial and odd branches")
{
    LambdaConfig cfg;
    const auto s = branch(Integer(1), 2, 5, cfg);
    CHECK_FALSE(s->trivial_branch);
    CHECK(s->held_out_valuation >= std::min(cfg.M, cfg.N));
    for (int k : s->held_out)
        CHECK(agreement(branch_phi_at(*s, k), branch_target(*s, k)) >= s->phi.certified());
    const auto q = branch(Integer(-3), 3, 5, cfg);
    CHECK(q->chi.parity() == 1);
    CHECK(q->held_out_valuation >= std::min(cfg.M, cfg.N));
    // k = 3: L^{5}(-2, chi_{-3}) = (1 - chi(5) 5^2) L(-2, chi_{-3}) = -52/9
    CHECK(branch_target(*q, 3) == make_rational(-52, 9));
    const auto odd = branch(Integer(1), 1, 5, cfg);
    CHECK(odd->vanishes);
    CHECK(odd->phi.is_zero());
}

TEST_CASE("composition")
{
    LambdaConfig cfg;
    const auto s = branch(Integer(1), 2, 5, cfg);
    const QPoly X({Rational(0), Rational(1)});
    CHECK(compose(*s, X, cfg) == s->phi);
    CHECK(compose(LambdaElement::constant(5, 12, 8, Rational(7)), X) == LambdaElement::constant(5, 12, 8, Rational(7)));
    // Psi((1+p)^{-2}(1+X)^2 - 1) at X = (1+p)^k - 1 is Psi((1+p)^{2k-2} - 1)
    const Rational c = make_rational(1, 36);
    const QPoly u({c - 1, 2 * c, c});
    const auto g = compose(*s, u, cfg);
    for (int k : {4, 6}) {
        const int kk = 2 * k - 2;
        if ((kk - 2) % 4 != 0)
            continue;
        CHECK(agreement(g.eval(node(5, k)), branch_target(*s, kk)) >= g.certified() - cfg.delta);
    }
    CHECK_THROWS_AS(compose(*s, QPoly({Rational(1), Rational(1)}), cfg), domain_error);
}

TEST_CASE("A_T(omega^a; X): specialization against the stabilized coefficient")
{
    LambdaConfig cfg;
    const int tol = std::min(cfg.M, cfg.N) - cfg.delta;
    for (const auto& T : enumerate_psd(1, 3)) {
        const auto f = a_T_lambda(1, 2, T, 5, cfg);
        CHECK(f.den_atoms.empty());
        for (int k : {6, 10})
            CHECK(agreement(specialize(f, 1, 5, k), stabilized_coeff(1, k, 5, T)) >= tol);
    }
    for (const auto& T : enumerate_psd(2, 1)) {
        const auto f = a_T_lambda(2, 0, T, 5, cfg);
        for (int k : {4, 8})
            CHECK_MESSAGE(agreement(specialize(f, 2, 5, k), stabilized_coeff(2, k, 5, T)) >= tol, T.to_string());
    }
}

TEST_CASE("A_0 in genus 1 on the trivial branch carries one pole")
{
    LambdaConfig cfg;
    const auto f = a_T_lambda(1, 0, HalfIntegralMatrix::diagonal({0}), 5, cfg);
    const auto B = b_poly(1, 5);
    REQUIRE(f.den_atoms.size() == 1);
    CHECK(f.den_atoms[0] == B.lin_index(0));
    CHECK(agreement(f.eval(node(5, 4), B), make_rational(-31, 60)) >= std::min(cfg.M, cfg.N) - cfg.delta);
    CHECK(f.cleared(B).min_valuation() >= 0);
    FracLambda bad = f;
    bad.den_atoms.push_back(7);
    CHECK_THROWS_AS(bad.cleared(B), consistency_error);
}

TEST_CASE("cross-branch specialization matches the Nebentypus coefficient")
{
    LambdaConfig cfg;
    const int tol = std::min(cfg.M, cfg.N) - cfg.delta;
    // a = 2, kappa = 5: chi = omega^{-3} = omega, omega^{2a-2kappa} = omega^2 nontrivial
    const auto spec = EisensteinSpec::make(1, 5, CharacterSpec::teichmuller_power(1, 5));
    for (const auto& T : enumerate_psd(1, 3))
        CHECK(agreement(specialize(a_T_lambda(1, 2, T, 5, cfg), 1, 5, 5),
                        fourier_coeff_chi(spec, T, cfg.M)) >= tol);
}

TEST_CASE("specialization scope")
{
    LambdaConfig cfg;
    const auto f = a_T_lambda(1, 2, HalfIntegralMatrix::diagonal({1}), 5, cfg);
    CHECK_THROWS_AS(specialize(f, 1, 5, 6, 5), scope_error);
    CHECK_THROWS_AS(a_T_lambda(1, 4, HalfIntegralMatrix::diagonal({1}), 5, cfg), domain_error);
}

TEST_CASE("cleared expansion is integral and thread-independent")
{
    LambdaConfig cfg;
    const auto e = lambda_eisenstein(2, 2, 5, 1, cfg, 1);
    for (const auto& T : e.keys())
        CHECK(e.at(T).min_valuation() >= 0);
    CHECK(e == lambda_eisenstein(2, 2, 5, 1, cfg, 3));
}
