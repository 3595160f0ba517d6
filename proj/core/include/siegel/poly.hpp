#pragma once

#include "siegel/errors.hpp"
#include "siegel/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

// Dense univariate polynomial, coefficients in ascending degree, trailing
// zeros trimmed. R is Integer or Rational in practice.
template <class R>
class Poly {
public:
    Poly() = default;
    Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const R& a) { return Poly(std::vector<R>{a}); }
    // a X^k
    static Poly monomial(const R& a, std::size_t k)
    {
        std::vector<R> c(k + 1, R(0));
        c[k] = a;
        return Poly(std::move(c));
    }

    const std::vector<R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    R operator[](std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }

    template <class S>
    S eval(const S& x) const
    {
        S acc = S(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + S(*it);
        return acc;
    }

    // p(a X)
    Poly scale_var(const R& a) const
    {
        std::vector<R> c = c_;
        R pw = 1;
        for (auto& x : c) {
            x *= pw;
            pw *= a;
        }
        return Poly(std::move(c));
    }

    Poly operator-() const
    {
        std::vector<R> c = c_;
        for (auto& x : c)
            x = -x;
        return Poly(std::move(c));
    }
    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<R> c(std::max(a.c_.size(), b.c_.size()), R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] += b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const R& s, const Poly& a)
    {
        std::vector<R> c = a.c_;
        for (auto& x : c)
            x *= s;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly pow(unsigned e) const
    {
        Poly r = constant(R(1));
        for (unsigned i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    // Truncate modulo X^n.
    Poly truncated(std::size_t n) const
    {
        std::vector<R> c(c_.begin(), c_.begin() + std::min(n, c_.size()));
        return Poly(std::move(c));
    }

    std::string to_string(const char* var = "X") const;

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<R> c_;
};

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;

inline std::string coeff_to_string(const Integer& x) { return x.get_str(); }
inline std::string coeff_to_string(const Rational& x) { return siegel::to_string(x); }

template <class R>
std::string Poly<R>::to_string(const char* var) const
{
    if (c_.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += "(" + coeff_to_string(c_[i]) + ")";
        if (i > 0)
            s += std::string("*") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

inline QPoly to_qpoly(const ZPoly& a)
{
    std::vector<Rational> c;
    for (const auto& x : a.coeffs())
        c.emplace_back(x);
    return QPoly(std::move(c));
}

// Back to Z[X]; throws consistency_error on a non-integral coefficient.
inline ZPoly to_zpoly(const QPoly& a, const char* what)
{
    std::vector<Integer> c;
    for (const auto& x : a.coeffs()) {
        if (!is_integer(x))
            throw consistency_error(std::string(what) + ": non-integral coefficient " + siegel::to_string(x));
        c.push_back(x.get_num());
    }
    return ZPoly(std::move(c));
}

// Exact division a / b over Q (long division from the top). Throws
// consistency_error with `what` if the remainder is nonzero.
inline QPoly exact_divide(const QPoly& a, const QPoly& b, const char* what)
{
    if (b.is_zero())
        throw domain_error("exact_divide: division by zero polynomial");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        if (!a.is_zero())
            throw consistency_error(std::string(what) + ": inexact division");
        return QPoly();
    }
    std::vector<Rational> q(da - db + 1, Rational(0));
    const Rational lead = b.coeffs().back();
    for (int i = da - db; i >= 0; --i) {
        Rational t = r[i + db] / lead;
        q[i] = t;
        if (t == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[i + j] -= t * b.coeffs()[j];
    }
    for (const auto& x : r)
        if (x != 0)
            throw consistency_error(std::string(what) + ": inexact division");
    return QPoly(std::move(q));
}

inline ZPoly exact_divide(const ZPoly& a, const ZPoly& b, const char* what)
{
    return to_zpoly(exact_divide(to_qpoly(a), to_qpoly(b), what), what);
}

// Power series a / b modulo X^n; b(0) must be a unit of R (+-1 for Integer).
template <class R>
Poly<R> series_divide(const Poly<R>& a, const Poly<R>& b, std::size_t n)
{
    if (b[0] == 0)
        throw domain_error("series_divide: constant term of the divisor is zero");
    std::vector<R> q(n, R(0));
    std::vector<R> r(n, R(0));
    for (std::size_t i = 0; i < n; ++i)
        r[i] = a[i];
    const R b0 = b[0];
    for (std::size_t i = 0; i < n; ++i) {
        R t = r[i] / b0;
        q[i] = t;
        if (t == 0)
            continue;
        for (std::size_t j = 0; i + j < n && j <= static_cast<std::size_t>(std::max(0, b.degree())); ++j)
            r[i + j] -= t * b[j];
    }
    return Poly<R>(std::move(q));
}

// Newton interpolation over Q: the unique polynomial of degree < nodes.size()
// through (x_j, y_j). Nodes must be distinct.
inline QPoly newton_interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y)
{
    const std::size_t n = x.size();
    if (y.size() != n)
        throw domain_error("newton_interpolate: size mismatch");
    std::vector<Rational> d = y;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            Rational den = x[i] - x[i - k];
            if (den == 0)
                throw domain_error("newton_interpolate: repeated node");
            d[i] = (d[i] - d[i - 1]) / den;
        }
    // Horner on the Newton basis.
    QPoly acc;
    for (std::size_t i = n; i-- > 0;) {
        QPoly lin(std::vector<Rational>{-x[i], Rational(1)});
        acc = acc * lin + QPoly::constant(d[i]);
    }
    return acc;
}

// Laurent polynomial in one variable with rational coefficients, used to
// state identities like F(c/X) = u X^{-e} F(X) without clearing denominators.
class Laurent {
public:
    Laurent() = default;
    static Laurent from(const QPoly& p, int shift = 0)
    {
        Laurent l;
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeffs()[i] != 0)
                l.c_[i + shift] = p.coeffs()[i];
        return l;
    }
    // p(c / X)
    static Laurent reflect(const QPoly& p, const Rational& c)
    {
        Laurent l;
        Rational pw = 1;
        for (int i = 0; i <= p.degree(); ++i) {
            if (p.coeffs()[i] != 0)
                l.c_[-i] = p.coeffs()[i] * pw;
            pw *= c;
        }
        return l;
    }
    Laurent scaled(const Rational& s) const
    {
        Laurent l;
        if (s == 0)
            return l;
        for (const auto& [e, v] : c_)
            l.c_[e] = v * s;
        return l;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
    std::string to_string() const
    {
        std::string s;
        for (const auto& [e, v] : c_) {
            if (!s.empty())
                s += " + ";
            s += "(" + siegel::to_string(v) + ")*X^" + std::to_string(e);
        }
        return s.empty() ? "0" : s;
    }

private:
    std::map<int, Rational> c_;
};

} // namespace siegel
