#include "siegel/rational.hpp"

#include "siegel/errors.hpp"

namespace siegel {

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational make_rational(const Integer& n, const Integer& d)
{
    if (d == 0)
        throw domain_error("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational rational_from_string(const std::string& s)
{
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw domain_error("not a rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw domain_error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

int valuation(const Integer& x, std::int64_t p)
{
    if (x == 0)
        throw domain_error("valuation of zero");
    Integer pp = static_cast<unsigned long>(p);
    Integer y = x;
    int v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation(const Rational& x, std::int64_t p)
{
    if (x == 0)
        throw domain_error("valuation of zero");
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Integer ipow(std::int64_t base, unsigned e)
{
    Integer r;
    Integer b = static_cast<long>(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational rpow(std::int64_t base, int e)
{
    if (e >= 0)
        return Rational(ipow(base, static_cast<unsigned>(e)));
    if (base == 0)
        throw domain_error("zero to a negative power");
    Rational r(Integer(1), ipow(base, static_cast<unsigned>(-e)));
    r.canonicalize();
    return r;
}

Rational rpow(const Rational& base, int e)
{
    Integer n, d;
    unsigned ue = static_cast<unsigned>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), ue);
    if (e < 0) {
        if (n == 0)
            throw domain_error("zero to a negative power");
        std::swap(n, d);
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace siegel
