#include "siegel/character.hpp"

#include "siegel/arith.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <map>

namespace siegel {

namespace {

std::int64_t mod_pm1(std::int64_t b, std::int64_t p)
{
    std::int64_t m = p - 1;
    return ((b % m) + m) % m;
}

void require_fundamental(const Integer& d)
{
    if (d == 1)
        return;
    if (d == 0 || fundamental_discriminant_decompose(d).f != 1 || fundamental_discriminant_decompose(d).d != d)
        throw domain_error("character: " + d.get_str() + " is not a fundamental discriminant");
}

} // namespace

int kronecker(const Integer& d, const Integer& m)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
    if (r == 2 || r == 3)
        throw domain_error("kronecker: d = " + d.get_str() + " is not 0 or 1 mod 4");
    return mpz_kronecker(d.get_mpz_t(), m.get_mpz_t());
}

CharacterSpec CharacterSpec::trivial() { return CharacterSpec{}; }

CharacterSpec CharacterSpec::kronecker(const Integer& d)
{
    require_fundamental(d);
    CharacterSpec c;
    c.d_ = d;
    return c;
}

CharacterSpec CharacterSpec::teichmuller_power(std::int64_t b, std::int64_t p)
{
    return product(1, b, p);
}

CharacterSpec CharacterSpec::product(const Integer& d, std::int64_t b, std::int64_t p)
{
    require_fundamental(d);
    if (p < 3 || !is_prime(p))
        throw domain_error("character: Teichmueller powers need an odd prime, got " + std::to_string(p));
    CharacterSpec c;
    c.p_ = p;
    c.b_ = mod_pm1(b, p);
    c.d_ = d;
    if (c.b_ != 0 && mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
        const std::int64_t pstar = (p % 4 == 1) ? p : -p;
        c.d_ = d / Integer(static_cast<long>(pstar));
        c.b_ = mod_pm1(c.b_ + (p - 1) / 2, p);
    }
    return c;
}

Integer CharacterSpec::conductor() const
{
    Integer f = abs(d_);
    if (b_ != 0)
        f *= static_cast<long>(p_);
    return f;
}

int CharacterSpec::parity() const
{
    int s = d_ < 0 ? -1 : 1;
    return (b_ % 2 == 1) ? -s : s;
}

int CharacterSpec::value(const Integer& n) const
{
    if (b_ != 0)
        throw domain_error("CharacterSpec::value on a Teichmueller character; use value_padic");
    return siegel::kronecker(d_, n);
}

PadicInt CharacterSpec::value_padic(const Integer& n, int M) const
{
    if (p_ == 0)
        throw domain_error("CharacterSpec::value_padic: no prime attached");
    int q = siegel::kronecker(d_, n);
    if (b_ == 0)
        return PadicInt(p_, M, q);
    if (q == 0 || mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p_)))
        return PadicInt(p_, M, 0);
    PadicInt w = teichmuller(n, p_, M).pow(Integer(static_cast<long>(b_)));
    return q == 1 ? w : -w;
}

CharacterSpec CharacterSpec::squared() const
{
    if (d_ != 1)
        throw domain_error("CharacterSpec::squared: only pure Teichmueller powers are supported");
    if (b_ == 0)
        return *this;
    return teichmuller_power(2 * b_, p_);
}

CharacterSpec CharacterSpec::times_kronecker(const Integer& d) const
{
    if (d_ != 1)
        throw domain_error("CharacterSpec::times_kronecker: character already has a quadratic part");
    if (p_ == 0)
        return kronecker(d);
    return product(d, b_, p_);
}

std::string CharacterSpec::describe() const
{
    std::string s;
    if (d_ != 1)
        s = "(" + d_.get_str() + "/.)";
    if (b_ != 0) {
        if (!s.empty())
            s += "*";
        s += "omega^" + std::to_string(b_) + "[p=" + std::to_string(p_) + "]";
    }
    return s.empty() ? "trivial" : s;
}

Rational generalized_bernoulli(unsigned k, const CharacterSpec& chi)
{
    if (k == 0)
        throw domain_error("generalized_bernoulli: k must be positive");
    if (!chi.is_rational())
        throw domain_error("generalized_bernoulli: character is not rational-valued; use the p-adic variant");
    const int sign_k = (k % 2 == 0) ? 1 : -1;
    if (chi.parity() != sign_k && !(k == 1 && chi.disc() == 1))
        return 0;
    const Integer f = chi.conductor();
    if (f == 1)
        return bernoulli_polynomial(k, 1);
    Rational sum = 0;
    for (Integer a = 1; a <= f; ++a) {
        int c = chi.value(a);
        if (c == 0)
            continue;
        Rational t = bernoulli_polynomial(k, make_rational(a, f));
        if (c > 0)
            sum += t;
        else
            sum -= t;
    }
    Integer fk;
    mpz_pow_ui(fk.get_mpz_t(), f.get_mpz_t(), k - 1);
    return sum * fk;
}

PadicNumber generalized_bernoulli_padic(unsigned k, const CharacterSpec& chi, int M)
{
    const std::int64_t p = chi.prime();
    if (p == 0)
        throw domain_error("generalized_bernoulli_padic: no prime attached to the character");
    if (chi.is_rational())
        return PadicNumber::from_rational(p, generalized_bernoulli(k, chi), M);
    if (k == 0)
        throw domain_error("generalized_bernoulli: k must be positive");
    const int sign_k = (k % 2 == 0) ? 1 : -1;
    if (chi.parity() != sign_k)
        return PadicNumber::zero(p, M);

    // Group the conductor sum by a mod p so the Teichmueller values only
    // enter once per residue class: B = sum_c omega(c)^b R_c, R_c rational.
    const Integer f = chi.conductor();
    Integer fk;
    mpz_pow_ui(fk.get_mpz_t(), f.get_mpz_t(), k - 1);
    std::map<std::int64_t, Rational> R;
    for (Integer a = 1; a <= f; ++a) {
        Integer ap;
        mpz_fdiv_r_ui(ap.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
        if (ap == 0)
            continue;
        int q = kronecker(chi.disc(), a);
        if (q == 0)
            continue;
        Rational t = bernoulli_polynomial(k, make_rational(a, f));
        R[ap.get_si()] += q > 0 ? t : Rational(-t);
    }
    int minv = M;
    for (auto& [c, r] : R) {
        r *= fk;
        if (r != 0)
            minv = std::min(minv, valuation(r, p));
    }
    const int W = std::max(1, M - minv);
    PadicNumber sum = PadicNumber::zero(p, M);
    const Integer b = static_cast<long>(chi.omega_exponent());
    for (const auto& [c, r] : R) {
        if (r == 0)
            continue;
        PadicInt w = teichmuller(Integer(static_cast<long>(c)), p, W).pow(b);
        sum = sum + PadicNumber::from_rational(p, r, M) * PadicNumber::from_padic_int(w);
    }
    return sum.with_abs_precision(M);
}

Rational dirichlet_L_neg(unsigned k, const CharacterSpec& chi, std::int64_t remove_p)
{
    Rational L = -generalized_bernoulli(k, chi) / Rational(k);
    if (remove_p != 0) {
        int c = chi.value(Integer(static_cast<long>(remove_p)));
        if (c != 0)
            L *= 1 - c * rpow(remove_p, static_cast<int>(k) - 1);
    }
    return L;
}

PadicNumber dirichlet_L_neg_padic(unsigned k, const CharacterSpec& chi, bool remove_p,
                                  std::int64_t p, int M)
{
    if (chi.is_rational()) {
        if (p == 0)
            p = chi.prime();
        if (p == 0)
            throw domain_error("dirichlet_L_neg_padic: no prime given");
        return PadicNumber::from_rational(p, dirichlet_L_neg(k, chi, remove_p ? p : 0), M);
    }
    if (p != 0 && p != chi.prime())
        throw domain_error("dirichlet_L_neg_padic: prime does not match the character");
    p = chi.prime();
    if (k == 0)
        throw domain_error("generalized_bernoulli: k must be positive");
    // chi(p) = 0 here since p divides the conductor, so removing the Euler
    // factor at p changes nothing.
    const int vk = valuation(Integer(k), p);
    PadicNumber B = generalized_bernoulli_padic(k, chi, M + vk);
    PadicNumber kk = PadicNumber::from_rational(p, Rational(k), M + 2 * vk + 2);
    return (-(B / kk)).with_abs_precision(M);
}

} // namespace siegel
