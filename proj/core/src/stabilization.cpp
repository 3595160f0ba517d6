#include "siegel/stabilization.hpp"

#include "siegel/errors.hpp"

namespace siegel {

BiPoly::BiPoly(std::vector<ZPoly> by_y) : y_(std::move(by_y)) { trim(); }

void BiPoly::trim()
{
    while (!y_.empty() && y_.back().is_zero())
        y_.pop_back();
}

BiPoly BiPoly::one() { return BiPoly({ZPoly::constant(1)}); }

BiPoly BiPoly::linear_factor(const Integer& c, unsigned i)
{
    return BiPoly({ZPoly::constant(1), ZPoly::monomial(-c, i)});
}

ZPoly BiPoly::at_y(const Integer& y) const
{
    ZPoly acc;
    for (auto it = y_.rbegin(); it != y_.rend(); ++it)
        acc = y * acc + *it;
    return acc;
}

QPoly BiPoly::at_x(const Rational& x) const
{
    std::vector<Rational> c;
    for (const auto& px : y_)
        c.push_back(to_qpoly(px).eval(x));
    return QPoly(std::move(c));
}

BiPoly BiPoly::reflected(int n) const
{
    if (degree_y() > n)
        throw domain_error("BiPoly::reflected: Y-degree exceeds n");
    std::vector<ZPoly> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= degree_y(); ++k)
        c[n - k] = y_[k];
    return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    if (a.y_.empty() || b.y_.empty())
        return BiPoly();
    std::vector<ZPoly> c(a.y_.size() + b.y_.size() - 1);
    for (std::size_t i = 0; i < a.y_.size(); ++i)
        for (std::size_t j = 0; j < b.y_.size(); ++j)
            c[i + j] = c[i + j] + a.y_[i] * b.y_[j];
    return BiPoly(std::move(c));
}

std::vector<Integer> stab_R_coefficients(int n, std::int64_t p)
{
    std::vector<Integer> c;
    for (int j = 1; j <= n; ++j)
        c.push_back(ipow(p, static_cast<unsigned>(j * (2 * n - j + 1) / 2)));
    return c;
}

StabilizationPolys stabilization_polys(int n, std::int64_t p)
{
    if (n < 1)
        throw domain_error("stabilization_polys: genus must be positive");
    StabilizationPolys s;
    s.n = n;
    s.p = p;
    s.P = BiPoly::linear_factor(ipow(p, static_cast<unsigned>(n)), 1);
    for (int i = 1; i <= n / 2; ++i)
        s.P = s.P * BiPoly::linear_factor(ipow(p, static_cast<unsigned>(2 * n - 2 * i + 1)), 2);
    s.R = BiPoly::one();
    auto c = stab_R_coefficients(n, p);
    for (int j = 1; j <= n; ++j)
        s.R = s.R * BiPoly::linear_factor(c[j - 1], static_cast<unsigned>(j));
    s.R_reflected = s.R.reflected(n);
    return s;
}

ZPoly stab_P1(int r, std::int64_t p)
{
    if (r == 0)
        return ZPoly::constant(1);
    return stabilization_polys(r, p).P.at_y(1);
}

ZPoly stab_R1(int r, std::int64_t p)
{
    if (r == 0)
        return ZPoly::constant(1);
    return stabilization_polys(r, p).R.at_y(1);
}

} // namespace siegel
