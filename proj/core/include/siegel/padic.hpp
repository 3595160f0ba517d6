#pragma once

#include "siegel/rational.hpp"

#include <cstdint>
#include <string>

namespace siegel {

// An element of Z_p known modulo p^M. Mixed-precision arithmetic silently
// truncates to the smaller precision.
class PadicInt {
public:
    PadicInt() = default;
    PadicInt(std::int64_t p, int M, const Integer& value);
    // Image of a p-integral rational.
    static PadicInt from_rational(std::int64_t p, int M, const Rational& q);

    std::int64_t prime() const { return p_; }
    int precision() const { return M_; }
    const Integer& value() const { return v_; }
    Integer modulus() const;

    // M when the value is 0 mod p^M.
    int valuation() const;
    bool is_unit() const;
    bool is_zero() const { return v_ == 0; }

    PadicInt with_precision(int M) const;  // only lowers
    PadicInt inverse() const;              // units only
    PadicInt pow(const Integer& e) const;  // e >= 0, or any e for units

    PadicInt operator-() const;
    friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
    // Compares at the common precision.
    friend bool operator==(const PadicInt& a, const PadicInt& b);

private:
    std::int64_t p_ = 0;
    int M_ = 0;
    Integer v_;
};

// x in Q_p as p^valuation * unit, or an exact-looking zero that is only known
// to vanish modulo p^abs_precision.
class PadicNumber {
public:
    PadicNumber() = default;
    static PadicNumber from_rational(std::int64_t p, const Rational& q, int abs_precision);
    static PadicNumber from_padic_int(const PadicInt& x);
    static PadicNumber zero(std::int64_t p, int abs_precision);
    static PadicNumber from_unit(const PadicInt& unit, int valuation);

    std::int64_t prime() const { return p_; }
    bool is_zero() const { return zero_; }
    int valuation() const;  // abs precision for zero
    const PadicInt& unit() const { return unit_; }
    int abs_precision() const;
    int rel_precision() const { return zero_ ? 0 : unit_.precision(); }

    // Requires valuation >= 0; result modulo p^abs_precision.
    PadicInt to_padic_int() const;
    PadicNumber with_abs_precision(int A) const;  // only lowers

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
    PadicNumber inverse() const;
    // Same representation: valuation, unit digits and precision all match.
    friend bool operator==(const PadicNumber& a, const PadicNumber& b);

    std::string to_string() const;

private:
    std::int64_t p_ = 0;
    bool zero_ = true;
    int val_ = 0;
    int zero_prec_ = 0;
    PadicInt unit_;
};

// Valuation of a - b, capped by the precision at which both are known.
int agreement(const PadicNumber& a, const PadicNumber& b);
// Same, comparing a p-adic value against an exact rational.
int agreement(const PadicNumber& a, const Rational& b);

// Teichmueller representative of x modulo p^M (p odd, p does not divide x).
PadicInt teichmuller(const Integer& x, std::int64_t p, int M);

// log_p(u) for u = 1 mod p, correct modulo p^{u.precision()}.
PadicInt padic_log(const PadicInt& u);

// s(x) = log_p(x) / log_p(1+p); loses one digit to the division.
PadicInt s_of(const PadicInt& x);

// exp_p(y) for v_p(y) >= 1 (p odd), used as the inverse check for padic_log.
PadicInt padic_exp(const PadicInt& y);

} // namespace siegel
