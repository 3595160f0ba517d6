#include "siegel/arith.hpp"

#include "siegel/errors.hpp"

#include <mutex>
#include <string>

namespace siegel {

namespace {

int mod_int(const Integer& x, long m)
{
    Integer r;
    Integer mm = m;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    return static_cast<int>(r.get_si());
}

// Splits a nonzero rational as l^v * u with u an l-adic unit.
std::pair<int, Rational> split_unit(const Rational& a, std::int64_t l)
{
    int v = valuation(a, l);
    Rational u = a / rpow(l, v);
    return {v, u};
}

int legendre_rational_unit(const Rational& u, std::int64_t l)
{
    return legendre(u.get_num(), l) * legendre(u.get_den(), l);
}

} // namespace

int kronecker_symbol(std::int64_t d, std::int64_t m)
{
    int r4 = static_cast<int>(((d % 4) + 4) % 4);
    if (r4 == 2 || r4 == 3)
        throw domain_error("kronecker_symbol: d = " + std::to_string(d) + " is not 0 or 1 mod 4");
    Integer dd = static_cast<long>(d), mm = static_cast<long>(m);
    return mpz_kronecker(dd.get_mpz_t(), mm.get_mpz_t());
}

int legendre(const Integer& a, std::int64_t p)
{
    Integer pp = static_cast<long>(p);
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
    if (r == 0)
        return 0;
    return mpz_legendre(r.get_mpz_t(), pp.get_mpz_t());
}

int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t l)
{
    if (a == 0 || b == 0)
        throw domain_error("hilbert_symbol: zero argument");
    auto [alpha, u] = split_unit(a, l);
    auto [beta, v] = split_unit(b, l);
    if (l != 2) {
        int s = 1;
        if ((alpha & 1) && (beta & 1) && ((l - 1) / 2) % 2 == 1)
            s = -s;
        if (beta & 1)
            s *= legendre_rational_unit(u, l);
        if (alpha & 1)
            s *= legendre_rational_unit(v, l);
        return s;
    }
    // Odd rationals n/d: d^{-1} = d mod 8.
    int u8 = mod_int(Integer(u.get_num() * u.get_den()), 8);
    int v8 = mod_int(Integer(v.get_num() * v.get_den()), 8);
    auto eps = [](int x) { return ((x - 1) / 2) & 1; };
    auto omg = [](int x) { return ((x * x - 1) / 8) & 1; };
    int e = eps(u8) * eps(v8) + alpha * omg(v8) + beta * omg(u8);
    return (e & 1) ? -1 : 1;
}

int hilbert_symbol_real(const Rational& a, const Rational& b)
{
    if (a == 0 || b == 0)
        throw domain_error("hilbert_symbol_real: zero argument");
    return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::pair<std::int64_t, int>> factor(const Integer& m, std::int64_t bound)
{
    if (m <= 0)
        throw domain_error("factor: argument must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    Integer n = m;
    for (std::int64_t d = 2;; d += (d == 2 ? 1 : 2)) {
        Integer dd = static_cast<long>(d);
        if (dd * dd > n)
            break;
        if (d > bound)
            throw bound_error("factorization bound exceeded: cofactor " + n.get_str() +
                              " has no divisor below " + std::to_string(bound));
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) {
        if (!n.fits_slong_p())
            throw bound_error("factorization bound exceeded: prime cofactor too large");
        out.emplace_back(n.get_si(), 1);
    }
    return out;
}

std::vector<std::int64_t> prime_divisors(const Integer& m, std::int64_t bound)
{
    std::vector<std::int64_t> out;
    Integer a = abs(m);
    if (a == 0)
        throw domain_error("prime_divisors of zero");
    for (auto [q, e] : factor(a, bound))
        out.push_back(q);
    return out;
}

DiscriminantSplit fundamental_discriminant_decompose(const Integer& D)
{
    if (D == 0)
        throw domain_error("fundamental_discriminant_decompose: D = 0");
    int r4 = mod_int(D, 4);
    if (r4 == 2 || r4 == 3)
        throw domain_error("fundamental_discriminant_decompose: D = " + D.get_str() +
                           " is not 0 or 1 mod 4");
    Integer s = sgn(D) < 0 ? -1 : 1;
    Integer m = 1;
    for (auto [q, e] : factor(abs(D))) {
        Integer qq = static_cast<long>(q);
        for (int i = 0; i < e / 2; ++i)
            m *= qq;
        if (e & 1)
            s *= qq;
    }
    if (mod_int(s, 4) == 1)
        return {s, m};
    // s = 2, 3 mod 4: D = 4s (m/2)^2, and m is even because D = 0 mod 4.
    return {4 * s, m / 2};
}

Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational bernoulli(unsigned k)
{
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= k) {
        unsigned n = static_cast<unsigned>(table.size());
        Rational s = 0;
        for (unsigned j = 0; j < n; ++j)
            s += Rational(binomial(n + 1, j)) * table[j];
        table.push_back(-s / (n + 1));
    }
    return table[k];
}

Rational bernoulli_polynomial(unsigned k, const Rational& x)
{
    Rational acc = 0;
    for (unsigned j = 0; j <= k; ++j)
        acc = acc * x + Rational(binomial(k, j)) * bernoulli(j);
    return acc;
}

} // namespace siegel
