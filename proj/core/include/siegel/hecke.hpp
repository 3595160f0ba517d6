#pragma once

#include "siegel/poly.hpp"
#include "siegel/rational.hpp"

#include <cstdint>
#include <vector>

namespace siegel {

// Satake parameters of E_kappa^{(n)} at l. Every psi_i is a power of l, so
// only the exponents are stored.
struct SatakeParams {
    int n = 0;
    int kappa = 0;
    std::int64_t l = 0;
    std::vector<std::int64_t> exponents;  // psi_i = l^{exponents[i]}, i = 0..n

    Rational psi(int i) const { return rpow(l, static_cast<int>(exponents.at(i))); }
    // psi_0^2 psi_1 ... psi_n as an exponent of l
    std::int64_t similitude_exponent() const;
};

SatakeParams satake_params(int n, int kappa, std::int64_t l);

// nkappa - n(n+1)/2
std::int64_t expected_similitude_exponent(int n, int kappa);

struct HeckePolynomial {
    std::int64_t l = 0;
    QPoly poly;
    // e for each factor 1 - l^e Y, sorted
    std::vector<std::int64_t> factor_exponents;
};

HeckePolynomial hecke_polynomial(const SatakeParams& s);

// Q_p with the factors (1 - Y) and (1 - psi_0 psi_1..psi_{[n/2]} Y) divided
// out; for n = 1 only (1 - Y).
HeckePolynomial q_star(int n, int kappa, std::int64_t p);

// Y^d Q*(1/Y) with d = deg Q* = 2^n - 2 + delta_{n,1}.
QPoly q_star_reflected(int n, int kappa, std::int64_t p);

struct DivisibilityResult {
    bool divides = false;
    QPoly quotient;
};

// R^{(n)}(p^{kappa-n-1}, Y) against Q*(Y).
DivisibilityResult divisibility_check(int n, int kappa, std::int64_t p);

// Q^{(n)}(Y) == Q^{(n-1)}(Y) Q^{(n-1)}(l^{kappa-n} Y) for odd n.
bool zharkovskaya_check(int n, int kappa, std::int64_t l);

} // namespace siegel
