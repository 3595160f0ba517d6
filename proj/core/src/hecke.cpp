#include "siegel/hecke.hpp"

#include "siegel/errors.hpp"
#include "siegel/stabilization.hpp"

#include <algorithm>
#include <string>

namespace siegel {

namespace {

void check_weight(int n, int kappa)
{
    if (n < 1)
        throw domain_error("genus must be positive");
    if (kappa <= n + 1)
        throw domain_error("weight " + std::to_string(kappa) + " must exceed n+1 = " +
                           std::to_string(n + 1));
}

// Even genus m (m = 0 allowed, giving just psi_0 = 1).
std::vector<std::int64_t> even_exponents(int m, std::int64_t kappa)
{
    const std::int64_t h = m / 2;
    std::vector<std::int64_t> e{h * (kappa - h) - h * (h + 1) / 2};
    for (std::int64_t i = 1; i <= m; ++i)
        e.push_back(i <= h ? -kappa + h + i : kappa - m + i - 1);
    return e;
}

QPoly linear(std::int64_t l, std::int64_t e)
{
    return QPoly({Rational(1), -rpow(l, static_cast<int>(e))});
}

} // namespace

std::int64_t SatakeParams::similitude_exponent() const
{
    std::int64_t s = 2 * exponents.at(0);
    for (std::size_t i = 1; i < exponents.size(); ++i)
        s += exponents[i];
    return s;
}

std::int64_t expected_similitude_exponent(int n, int kappa)
{
    return static_cast<std::int64_t>(n) * kappa - static_cast<std::int64_t>(n) * (n + 1) / 2;
}

SatakeParams satake_params(int n, int kappa, std::int64_t l)
{
    check_weight(n, kappa);
    if (l < 2)
        throw domain_error("satake_params: l must be a prime");
    SatakeParams s;
    s.n = n;
    s.kappa = kappa;
    s.l = l;
    if (n % 2 == 0) {
        s.exponents = even_exponents(n, kappa);
    } else {
        s.exponents = even_exponents(n - 1, kappa);
        s.exponents.push_back(kappa - n);
    }
    return s;
}

HeckePolynomial hecke_polynomial(const SatakeParams& s)
{
    HeckePolynomial h;
    h.l = s.l;
    const int n = s.n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::int64_t e = s.exponents[0];
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                e += s.exponents[static_cast<std::size_t>(i) + 1];
        h.factor_exponents.push_back(e);
    }
    std::sort(h.factor_exponents.begin(), h.factor_exponents.end());
    h.poly = QPoly::constant(1);
    for (auto e : h.factor_exponents)
        h.poly = h.poly * linear(s.l, e);
    return h;
}

HeckePolynomial q_star(int n, int kappa, std::int64_t p)
{
    HeckePolynomial h = hecke_polynomial(satake_params(n, kappa, p));
    std::vector<std::int64_t> drop{0};
    if (n > 1) {
        const std::int64_t m = n / 2;
        drop.push_back(m * (kappa - m) - m * (m + 1) / 2);
    }
    for (auto e : drop) {
        auto it = std::find(h.factor_exponents.begin(), h.factor_exponents.end(), e);
        if (it == h.factor_exponents.end())
            throw consistency_error("q_star: Hecke polynomial has no factor 1 - p^" +
                                    std::to_string(e) + " Y");
        h.factor_exponents.erase(it);
        h.poly = exact_divide(h.poly, linear(p, e), "q_star");
    }
    return h;
}

QPoly q_star_reflected(int n, int kappa, std::int64_t p)
{
    const QPoly q = q_star(n, kappa, p).poly;
    const int d = (1 << n) - 2 + (n == 1 ? 1 : 0);
    if (q.degree() != d)
        throw consistency_error("q_star_reflected: unexpected degree");
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k)
        c[static_cast<std::size_t>(d - k)] = q[static_cast<std::size_t>(k)];
    return QPoly(std::move(c));
}

DivisibilityResult divisibility_check(int n, int kappa, std::int64_t p)
{
    check_weight(n, kappa);
    const QPoly q = q_star(n, kappa, p).poly;
    const QPoly r = stabilization_polys(n, p).R.at_x(rpow(p, kappa - n - 1));
    DivisibilityResult res;
    try {
        res.quotient = exact_divide(q, r, "divisibility_check");
        res.divides = true;
    } catch (const consistency_error&) {
        res.divides = false;
    }
    return res;
}

bool zharkovskaya_check(int n, int kappa, std::int64_t l)
{
    if (n % 2 == 0 || n < 3)
        throw domain_error("zharkovskaya_check: needs odd n >= 3");
    const QPoly full = hecke_polynomial(satake_params(n, kappa, l)).poly;
    const QPoly lower = hecke_polynomial(satake_params(n - 1, kappa, l)).poly;
    return full == lower * lower.scale_var(rpow(l, kappa - n));
}

} // namespace siegel
