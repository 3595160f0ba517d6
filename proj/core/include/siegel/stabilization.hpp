#pragma once

#include "siegel/poly.hpp"

#include <cstdint>
#include <vector>

namespace siegel {

// Polynomial in X and Y with integer coefficients, stored by powers of Y.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<ZPoly> by_y);
    static BiPoly one();
    // 1 - c X^i Y
    static BiPoly linear_factor(const Integer& c, unsigned i);

    const std::vector<ZPoly>& by_y() const { return y_; }
    int degree_y() const { return static_cast<int>(y_.size()) - 1; }

    ZPoly at_y(const Integer& y) const;  // as a polynomial in X
    QPoly at_x(const Rational& x) const; // as a polynomial in Y
    // Y^n P(X, 1/Y)
    BiPoly reflected(int n) const;

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    void trim();
    std::vector<ZPoly> y_;
};

struct StabilizationPolys {
    int n = 0;
    std::int64_t p = 0;
    BiPoly P, R, R_reflected;
};

StabilizationPolys stabilization_polys(int n, std::int64_t p);

// P^{(r)}(X, 1) and R^{(r)}(X, 1)
ZPoly stab_P1(int r, std::int64_t p);
ZPoly stab_R1(int r, std::int64_t p);

// Exponents p^{j(2n-j+1)/2}, j = 1..n, i.e. the X^j coefficients of the
// linear-in-Y factors of R^{(n)}.
std::vector<Integer> stab_R_coefficients(int n, std::int64_t p);

} // namespace siegel
