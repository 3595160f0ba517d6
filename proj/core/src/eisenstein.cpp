#include "siegel/eisenstein.hpp"

#include "siegel/arith.hpp"
#include "siegel/hecke.hpp"
#include "siegel/parallel.hpp"
#include "siegel/quadform.hpp"
#include "siegel/stabilization.hpp"

#include <string>

namespace siegel {

namespace {

int two_power(int n, int r) { return (r + 1) / 2 - (n + 1) / 2; }

Rational coeff_rational(int n, int kappa, const HalfIntegralMatrix& T, std::int64_t remove_p)
{
    const CoefficientData c = coefficient_data(n, T);
    const int r = c.r;
    Rational v = rpow(2, two_power(n, r));
    for (int i = r / 2 + 1; i <= n / 2; ++i)
        v *= dirichlet_L_neg(static_cast<unsigned>(2 * kappa - 2 * i), CharacterSpec::trivial(),
                             remove_p);
    if (r % 2 == 0)
        v *= dirichlet_L_neg(static_cast<unsigned>(kappa - r / 2), CharacterSpec::kronecker(c.d),
                             remove_p);
    for (auto l : c.primes) {
        if (l == remove_p)
            continue;
        v *= to_qpoly(f_poly(c.inner, l).F).eval(rpow(l, kappa - r - 1));
    }
    return v;
}

PadicNumber eval_padic(const ZPoly& F, const PadicNumber& x, std::int64_t p, int M)
{
    PadicNumber acc = PadicNumber::zero(p, M);
    const auto& c = F.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + PadicNumber::from_rational(p, Rational(*it), M);
    return acc;
}

void require_trivial(const EisensteinSpec& spec, const char* what)
{
    if (!spec.chi.is_trivial())
        throw domain_error(std::string(what) + ": needs the trivial character");
}

void require_nebentypus(const EisensteinSpec& spec)
{
    const auto& chi = spec.chi;
    if (chi.disc() != 1 || chi.omega_exponent() == 0)
        throw domain_error("Nebentypus coefficients need chi = omega^b with b != 0, got " +
                           chi.describe());
    if ((2 * chi.omega_exponent()) % (chi.prime() - 1) == 0)
        throw domain_error("chi^2 is trivial for " + chi.describe() +
                           "; excluded for Nebentypus coefficients");
}

} // namespace

CoefficientData coefficient_data(int n, const HalfIntegralMatrix& T)
{
    if (T.degree() != n)
        throw domain_error("coefficient: matrix " + T.to_string() + " has degree " +
                           std::to_string(T.degree()) + ", expected " + std::to_string(n));
    CoefficientData c;
    auto bd = block_decompose(T);
    c.inner = bd.inner;
    c.r = c.inner.degree();
    if (c.r == 0)
        return c;
    // D = 2^{2[r/2]} det T' = det(2T') / 2^{r mod 2}
    Integer D = c.inner.det_gram2();
    if (c.r % 2 == 1) {
        D /= 2;
        c.primes = prime_divisors(D);
    } else {
        if ((c.r / 2) % 2 == 1)
            D = -D;
        auto split = fundamental_discriminant_decompose(D);
        c.d = split.d;
        c.primes = prime_divisors(split.f);
    }
    return c;
}

EisensteinSpec EisensteinSpec::make(int n, int kappa, const CharacterSpec& chi)
{
    if (n < 1)
        throw domain_error("genus must be at least 1");
    if (kappa <= n + 1)
        throw domain_error("weight " + std::to_string(kappa) + " must exceed n+1 = " +
                           std::to_string(n + 1));
    const int sign = (kappa % 2 == 0) ? 1 : -1;
    if (chi.parity() != sign)
        throw domain_error("character " + chi.describe() + " has chi(-1) != (-1)^" +
                           std::to_string(kappa));
    if (!chi.is_trivial() && chi.disc() != 1)
        throw scope_error("only the trivial character and Teichmueller powers are supported, got " +
                          chi.describe());
    return EisensteinSpec{n, kappa, chi};
}

std::string EisensteinSpec::describe() const
{
    std::string s = "E_" + std::to_string(kappa) + "^(" + std::to_string(n) + ")";
    if (!chi.is_trivial())
        s += "(" + chi.describe() + ")";
    return s;
}

Rational constant_term(const EisensteinSpec& spec)
{
    require_trivial(spec, "constant_term");
    return fourier_coeff(spec, HalfIntegralMatrix(spec.n, std::vector<std::int64_t>(
                                                             static_cast<std::size_t>(spec.n) * spec.n, 0)));
}

PadicNumber constant_term_padic(const EisensteinSpec& spec, int M)
{
    return fourier_coeff_chi(spec, HalfIntegralMatrix(spec.n, std::vector<std::int64_t>(
                                                                  static_cast<std::size_t>(spec.n) * spec.n, 0)),
                             M);
}

Rational fourier_coeff(const EisensteinSpec& spec, const HalfIntegralMatrix& T)
{
    require_trivial(spec, "fourier_coeff");
    return coeff_rational(spec.n, spec.kappa, T, 0);
}

PadicNumber fourier_coeff_chi(const EisensteinSpec& spec, const HalfIntegralMatrix& T, int M)
{
    require_nebentypus(spec);
    const std::int64_t p = spec.chi.prime();
    const std::int64_t b = spec.chi.omega_exponent();
    const int n = spec.n;
    const int kappa = spec.kappa;
    const CoefficientData c = coefficient_data(n, T);
    const int r = c.r;

    PadicNumber v = PadicNumber::from_rational(p, rpow(2, two_power(n, r)), M);
    const CharacterSpec chi2 = spec.chi.squared();
    for (int i = r / 2 + 1; i <= n / 2; ++i)
        v = v * dirichlet_L_neg_padic(static_cast<unsigned>(2 * kappa - 2 * i), chi2, true, p, M);
    if (r % 2 == 0)
        v = v * dirichlet_L_neg_padic(static_cast<unsigned>(kappa - r / 2),
                                      CharacterSpec::product(c.d, b, p), true, p, M);
    for (auto l : c.primes) {
        if (l == p)
            continue;
        PadicNumber x = PadicNumber::from_padic_int(spec.chi.value_padic(Integer(static_cast<long>(l)), M)) *
                        PadicNumber::from_rational(p, rpow(l, kappa - r - 1), M);
        v = v * eval_padic(f_poly(c.inner, l).F, x, p, M);
    }
    return v.with_abs_precision(M);
}

Rational stabilized_coeff(int n, int kappa, std::int64_t p, const HalfIntegralMatrix& T)
{
    EisensteinSpec::make(n, kappa);
    if (p < 3 || !is_prime(p))
        throw scope_error("stabilization is implemented for odd primes only, got p = " +
                          std::to_string(p));
    return coeff_rational(n, kappa, T, p);
}

namespace {

template <class V, class F>
QExpansion<V> build(int n, std::int64_t bound, const std::string& descriptor,
                    const std::vector<HalfIntegralMatrix>& keys, int jobs, F&& f)
{
    std::vector<V> vals(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) { vals[i] = f(keys[i]); });
    QExpansion<V> e(n, bound, descriptor);
    for (std::size_t i = 0; i < keys.size(); ++i)
        e.insert(keys[i], std::move(vals[i]));
    return e;
}

int checked_bound(std::int64_t b)
{
    if (b < 0 || b > 1'000'000)
        throw bound_error("trace bound " + std::to_string(b) + " out of range");
    return static_cast<int>(b);
}

} // namespace

QExpansion<Rational> eisenstein_expansion(const EisensteinSpec& spec, std::int64_t trace_bound,
                                          int jobs)
{
    require_trivial(spec, "eisenstein_expansion");
    return build<Rational>(spec.n, trace_bound, spec.describe(),
                           enumerate_psd(spec.n, checked_bound(trace_bound)), jobs,
                           [&](const HalfIntegralMatrix& T) { return fourier_coeff(spec, T); });
}

QExpansion<PadicNumber> nebentypus_expansion(const EisensteinSpec& spec, std::int64_t trace_bound,
                                             int M, int jobs)
{
    require_nebentypus(spec);
    return build<PadicNumber>(spec.n, trace_bound, spec.describe(),
                              enumerate_psd(spec.n, checked_bound(trace_bound)), jobs,
                              [&](const HalfIntegralMatrix& T) { return fourier_coeff_chi(spec, T, M); });
}

QExpansion<Rational> stabilized_expansion(int n, int kappa, std::int64_t p,
                                          std::int64_t trace_bound, int jobs)
{
    return build<Rational>(n, trace_bound,
                           "E_" + std::to_string(kappa) + "^(" + std::to_string(n) + ")*[p=" +
                               std::to_string(p) + "]",
                           enumerate_psd(n, checked_bound(trace_bound)), jobs,
                           [&](const HalfIntegralMatrix& T) { return stabilized_coeff(n, kappa, p, T); });
}

QExpansion<Rational> eisenstein_expansion_orbit(const EisensteinSpec& spec, std::int64_t p,
                                                std::int64_t target_bound, int depth, int jobs)
{
    require_trivial(spec, "eisenstein_expansion_orbit");
    if (depth < 0)
        throw domain_error("eisenstein_expansion_orbit: negative depth");
    const auto targets = enumerate_psd(spec.n, checked_bound(target_bound));
    std::vector<HalfIntegralMatrix> keys;
    std::map<HalfIntegralMatrix, bool> seen;
    Integer scale = 1;
    for (int i = 0; i <= depth; ++i) {
        for (const auto& T : targets) {
            HalfIntegralMatrix S = i == 0 ? T : T.scaled(scale.get_si());
            if (seen.emplace(S, true).second)
                keys.push_back(S);
        }
        scale *= static_cast<long>(p);
        if (!scale.fits_slong_p())
            throw bound_error("eisenstein_expansion_orbit: p^depth overflows");
    }
    Integer bound = Integer(static_cast<long>(target_bound)) * ipow(p, static_cast<unsigned>(depth));
    if (!bound.fits_slong_p())
        throw bound_error("eisenstein_expansion_orbit: bound overflows");
    return build<Rational>(spec.n, bound.get_si(), spec.describe(), keys, jobs,
                           [&](const HalfIntegralMatrix& T) { return fourier_coeff(spec, T); });
}

QExpansion<Rational> apply_u_polynomial(const QExpansion<Rational>& e, const QPoly& phi,
                                        std::int64_t p, const std::string& descriptor)
{
    const int d = std::max(phi.degree(), 0);
    const Integer pd = ipow(p, static_cast<unsigned>(d));
    QExpansion<Rational> out(e.genus(), e.bound() / pd.get_si(), descriptor);
    for (const auto& T : e.keys()) {
        if (T.trace() * pd > e.bound())
            continue;
        Rational acc = 0;
        HalfIntegralMatrix S = T;
        for (int i = 0; i <= d; ++i) {
            if (i > 0)
                S = S.scaled(p);
            if (phi[static_cast<std::size_t>(i)] != 0)
                acc += phi[static_cast<std::size_t>(i)] * e.at(S);
        }
        out.insert(T, acc);
    }
    return out;
}

int operator_depth(int n) { return n; }
int q_star_depth(int n) { return (1 << n) - 2 + (n == 1 ? 1 : 0); }

QExpansion<Rational> stabilize_via_operator(int n, int kappa, std::int64_t p,
                                            const QExpansion<Rational>& e)
{
    EisensteinSpec::make(n, kappa);
    if (e.genus() != n)
        throw domain_error("stabilize_via_operator: expansion genus mismatch");
    const auto sp = stabilization_polys(n, p);
    const Rational x = rpow(p, kappa - n - 1);
    const QPoly phi = sp.R_reflected.at_x(x);
    const Rational scale = sp.P.at_x(x).eval(Rational(1)) / sp.R.at_x(x).eval(Rational(1));
    auto out = apply_u_polynomial(e, scale * phi, p, e.descriptor() + "*[p=" + std::to_string(p) + "]");
    return out;
}

QExpansion<Rational> stabilize_via_q_star(int n, int kappa, std::int64_t p,
                                          const QExpansion<Rational>& e)
{
    EisensteinSpec::make(n, kappa);
    if (e.genus() != n)
        throw domain_error("stabilize_via_q_star: expansion genus mismatch");
    const auto sp = stabilization_polys(n, p);
    const Rational x = rpow(p, kappa - n - 1);
    const Rational scale = sp.P.at_x(x).eval(Rational(1)) / q_star(n, kappa, p).poly.eval(Rational(1));
    return apply_u_polynomial(e, scale * q_star_reflected(n, kappa, p), p,
                              e.descriptor() + "*Q[p=" + std::to_string(p) + "]");
}

} // namespace siegel
