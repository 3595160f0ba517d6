#include "siegel/padic.hpp"

#include "siegel/errors.hpp"

#include <algorithm>
#include <string>

namespace siegel {

namespace {

Integer reduce(const Integer& x, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

void same_prime(std::int64_t a, std::int64_t b)
{
    if (a != b)
        throw domain_error("p-adic operands over different primes");
}

int vp_of_int(std::int64_t k, std::int64_t p)
{
    int e = 0;
    while (k % p == 0) {
        k /= p;
        ++e;
    }
    return e;
}

int ceil_log(std::int64_t p, std::int64_t x)
{
    int e = 0;
    std::int64_t q = 1;
    while (q < x) {
        q *= p;
        ++e;
    }
    return e;
}

} // namespace

// ---------------------------------------------------------------- PadicInt

PadicInt::PadicInt(std::int64_t p, int M, const Integer& value) : p_(p), M_(M)
{
    if (p < 2)
        throw domain_error("PadicInt: bad prime");
    if (M < 0)
        throw domain_error("PadicInt: negative precision");
    v_ = reduce(value, modulus());
}

PadicInt PadicInt::from_rational(std::int64_t p, int M, const Rational& q)
{
    Integer m = ipow(p, static_cast<unsigned>(M));
    Integer den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw domain_error("PadicInt::from_rational: " + to_string(q) + " is not p-integral");
    if (M == 0)
        return PadicInt(p, 0, 0);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p, M, q.get_num() * inv);
}

Integer PadicInt::modulus() const { return ipow(p_, static_cast<unsigned>(M_)); }

int PadicInt::valuation() const
{
    if (v_ == 0)
        return M_;
    return siegel::valuation(v_, p_);
}

bool PadicInt::is_unit() const
{
    return M_ > 0 && !mpz_divisible_ui_p(v_.get_mpz_t(), static_cast<unsigned long>(p_));
}

PadicInt PadicInt::with_precision(int M) const
{
    return PadicInt(p_, std::min(M, M_), v_);
}

PadicInt PadicInt::inverse() const
{
    if (!is_unit())
        throw domain_error("PadicInt::inverse of a non-unit");
    Integer inv;
    Integer m = modulus();
    mpz_invert(inv.get_mpz_t(), v_.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p_, M_, inv);
}

PadicInt PadicInt::pow(const Integer& e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Integer r;
    Integer m = modulus();
    mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p_, M_, r);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, M_, -v_); }

PadicInt operator+(const PadicInt& a, const PadicInt& b)
{
    same_prime(a.p_, b.p_);
    return PadicInt(a.p_, std::min(a.M_, b.M_), a.v_ + b.v_);
}

PadicInt operator-(const PadicInt& a, const PadicInt& b)
{
    same_prime(a.p_, b.p_);
    return PadicInt(a.p_, std::min(a.M_, b.M_), a.v_ - b.v_);
}

PadicInt operator*(const PadicInt& a, const PadicInt& b)
{
    same_prime(a.p_, b.p_);
    return PadicInt(a.p_, std::min(a.M_, b.M_), a.v_ * b.v_);
}

bool operator==(const PadicInt& a, const PadicInt& b)
{
    if (a.p_ != b.p_)
        return false;
    return (a - b).is_zero();
}

// ------------------------------------------------------------- PadicNumber

PadicNumber PadicNumber::zero(std::int64_t p, int abs_precision)
{
    PadicNumber z;
    z.p_ = p;
    z.zero_ = true;
    z.zero_prec_ = abs_precision;
    return z;
}

PadicNumber PadicNumber::from_unit(const PadicInt& unit, int valuation)
{
    if (!unit.is_unit())
        throw domain_error("PadicNumber::from_unit: not a unit");
    PadicNumber x;
    x.p_ = unit.prime();
    x.zero_ = false;
    x.val_ = valuation;
    x.unit_ = unit;
    return x;
}

PadicNumber PadicNumber::from_rational(std::int64_t p, const Rational& q, int abs_precision)
{
    if (q == 0)
        return zero(p, abs_precision);
    int v = siegel::valuation(q, p);
    if (v >= abs_precision)
        return zero(p, abs_precision);
    Rational u = q / rpow(p, v);
    return from_unit(PadicInt::from_rational(p, abs_precision - v, u), v);
}

PadicNumber PadicNumber::from_padic_int(const PadicInt& x)
{
    if (x.is_zero())
        return zero(x.prime(), x.precision());
    int v = x.valuation();
    Integer u = x.value() / ipow(x.prime(), static_cast<unsigned>(v));
    return from_unit(PadicInt(x.prime(), x.precision() - v, u), v);
}

int PadicNumber::valuation() const { return zero_ ? zero_prec_ : val_; }

int PadicNumber::abs_precision() const { return zero_ ? zero_prec_ : val_ + unit_.precision(); }

PadicInt PadicNumber::to_padic_int() const
{
    if (zero_)
        return PadicInt(p_, std::max(0, zero_prec_), 0);
    if (val_ < 0)
        throw domain_error("PadicNumber::to_padic_int: negative valuation");
    int A = abs_precision();
    return PadicInt(p_, A, unit_.value() * ipow(p_, static_cast<unsigned>(val_)));
}

PadicNumber PadicNumber::with_abs_precision(int A) const
{
    if (zero_)
        return zero(p_, std::min(A, zero_prec_));
    if (A <= val_)
        return zero(p_, A);
    return from_unit(unit_.with_precision(A - val_), val_);
}

PadicNumber PadicNumber::operator-() const
{
    if (zero_)
        return *this;
    return from_unit(-unit_, val_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b)
{
    same_prime(a.p_, b.p_);
    int A = std::min(a.abs_precision(), b.abs_precision());
    if (a.zero_)
        return b.with_abs_precision(A);
    if (b.zero_)
        return a.with_abs_precision(A);
    int v0 = std::min(a.val_, b.val_);
    if (A <= v0)
        return PadicNumber::zero(a.p_, A);
    Integer s = a.unit_.value() * ipow(a.p_, static_cast<unsigned>(a.val_ - v0)) +
                b.unit_.value() * ipow(a.p_, static_cast<unsigned>(b.val_ - v0));
    PadicInt t(a.p_, A - v0, s);
    if (t.is_zero())
        return PadicNumber::zero(a.p_, A);
    PadicNumber r = PadicNumber::from_padic_int(t);
    r.val_ += v0;
    return r;
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b)
{
    same_prime(a.p_, b.p_);
    if (a.zero_ || b.zero_)
        return PadicNumber::zero(a.p_, a.valuation() + b.valuation());
    return PadicNumber::from_unit(a.unit_ * b.unit_, a.val_ + b.val_);
}

PadicNumber PadicNumber::inverse() const
{
    if (zero_)
        throw domain_error("PadicNumber: division by a value indistinguishable from zero");
    return from_unit(unit_.inverse(), -val_);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

std::string PadicNumber::to_string() const
{
    std::string O = " + O(" + std::to_string(p_) + "^" + std::to_string(abs_precision()) + ")";
    if (zero_)
        return "0" + O;
    Rational v = Rational(unit_.value()) * rpow(p_, val_);
    return siegel::to_string(v) + O;
}

bool operator==(const PadicNumber& a, const PadicNumber& b)
{
    if (a.p_ != b.p_ || a.zero_ != b.zero_)
        return false;
    if (a.zero_)
        return a.zero_prec_ == b.zero_prec_;
    return a.val_ == b.val_ && a.unit_.precision() == b.unit_.precision() &&
           a.unit_.value() == b.unit_.value();
}

int agreement(const PadicNumber& a, const PadicNumber& b)
{
    PadicNumber d = a - b;
    return d.valuation();
}

int agreement(const PadicNumber& a, const Rational& b)
{
    int A = a.abs_precision();
    return agreement(a, PadicNumber::from_rational(a.prime(), b, A));
}

// -------------------------------------------------------------- functions

PadicInt teichmuller(const Integer& x, std::int64_t p, int M)
{
    if (p == 2)
        throw domain_error("teichmuller: p must be odd");
    if (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)))
        throw domain_error("teichmuller: p divides x");
    PadicInt y(p, M, x);
    Integer e = static_cast<long>(p);
    for (int i = 0; i <= M; ++i) {
        PadicInt z = y.pow(e);
        if (z.value() == y.value())
            break;
        y = z;
    }
    return y;
}

PadicInt padic_log(const PadicInt& u)
{
    const std::int64_t p = u.prime();
    const int M = u.precision();
    if (p == 2)
        throw domain_error("padic_log: p must be odd");
    if (M < 1 || !mpz_divisible_ui_p(Integer(u.value() - 1).get_mpz_t(), static_cast<unsigned long>(p)))
        throw domain_error("padic_log: argument is not 1 mod p");
    const int W = M + ceil_log(p, std::max(M, 1)) + 2;
    const Integer y = u.value() - 1;
    if (y == 0)
        return PadicInt(p, M, 0);
    const int vy = siegel::valuation(y, p);
    const Integer mW = ipow(p, static_cast<unsigned>(W));
    Integer sum = 0;
    for (std::int64_t k = 1;; ++k) {
        int e = vp_of_int(k, p);
        // v(y^k / k) >= k*vy - e; once that clears W for this k and every
        // later k the tail vanishes modulo p^W.
        if (k * vy - ceil_log(p, k + 1) >= W)
            break;
        Integer mod = ipow(p, static_cast<unsigned>(W + e));
        Integer yk;
        Integer kk = static_cast<long>(k);
        mpz_powm_ui(yk.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(k), mod.get_mpz_t());
        Integer pe = ipow(p, static_cast<unsigned>(e));
        mpz_divexact(yk.get_mpz_t(), yk.get_mpz_t(), pe.get_mpz_t());
        Integer ku = kk / pe, inv;
        mpz_invert(inv.get_mpz_t(), ku.get_mpz_t(), mW.get_mpz_t());
        Integer term = reduce(yk * inv, mW);
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
    }
    return PadicInt(p, M, sum);
}

PadicInt padic_exp(const PadicInt& y)
{
    const std::int64_t p = y.prime();
    const int M = y.precision();
    if (p == 2)
        throw domain_error("padic_exp: p must be odd");
    if (M >= 1 && !mpz_divisible_ui_p(y.value().get_mpz_t(), static_cast<unsigned long>(p)))
        throw domain_error("padic_exp: argument must lie in pZ_p");
    const int W = M + 2;
    const Integer mW = ipow(p, static_cast<unsigned>(W));
    Integer sum = 1;
    Integer fact = 1;
    int vfact = 0;
    for (std::int64_t k = 1;; ++k) {
        fact *= static_cast<long>(k);
        vfact += vp_of_int(k, p);
        // v(y^k / k!) >= k - (k-1)/(p-1)
        if (k - (k - 1) / (p - 1) >= W + 1)
            break;
        Integer mod = ipow(p, static_cast<unsigned>(W + vfact));
        Integer yk;
        mpz_powm_ui(yk.get_mpz_t(), y.value().get_mpz_t(), static_cast<unsigned long>(k), mod.get_mpz_t());
        Integer pe = ipow(p, static_cast<unsigned>(vfact));
        mpz_divexact(yk.get_mpz_t(), yk.get_mpz_t(), pe.get_mpz_t());
        Integer fu = fact / pe, inv;
        mpz_invert(inv.get_mpz_t(), fu.get_mpz_t(), mW.get_mpz_t());
        sum += yk * inv;
    }
    return PadicInt(p, M, sum);
}

PadicInt s_of(const PadicInt& x)
{
    const std::int64_t p = x.prime();
    const int M = x.precision();
    if (M < 2)
        throw domain_error("s_of: need precision at least 2");
    PadicInt lx = padic_log(x);
    PadicInt l1 = padic_log(PadicInt(p, M, 1 + p));
    Integer pp = static_cast<long>(p);
    PadicInt a(p, M - 1, lx.value() / pp);
    PadicInt b(p, M - 1, l1.value() / pp);
    return a * b.inverse();
}

} // namespace siegel
