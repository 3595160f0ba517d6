#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace siegel {

// GMP rationals are canonicalized after every arithmetic operation, which is
// exactly the "always reduced" contract we want.
using Integer = mpz_class;
using Rational = mpq_class;

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);
// n/d in lowest terms. GMP's two-argument constructor does not reduce.
Rational make_rational(const Integer& n, const Integer& d);
Rational rational_from_string(const std::string& s);

// v_p of a nonzero integer / rational. Throws on zero.
int valuation(const Integer& x, std::int64_t p);
int valuation(const Rational& x, std::int64_t p);

Integer ipow(std::int64_t base, unsigned e);
Rational rpow(std::int64_t base, int e);
Rational rpow(const Rational& base, int e);

bool is_integer(const Rational& q);

} // namespace siegel
