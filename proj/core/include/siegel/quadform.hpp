#pragma once

#include "siegel/matrix.hpp"
#include "siegel/poly.hpp"
#include "siegel/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace siegel {

// chi_l(x): 1 if x is a square in Q_l, -1 if Q_l(sqrt x) is unramified,
// 0 if ramified.
int chi_local(const Rational& x, std::int64_t l);

// Local and global invariants of a nondegenerate T of degree r at l.
struct LocalInvariants {
    int r = 0;
    std::int64_t l = 0;
    Rational det;        // det T
    Integer D;           // 2^{2[r/2]} det T
    Integer d = 1, f = 1;  // (-1)^{r/2} D = d f^2, even r only
    int chi = 0;         // chi_l((-1)^{r/2} det T), even r only
    int hasse = 1;       // prod_{i <= j} (a_i, a_j)_l over a diagonalization
    int eta = 1;         // odd r only
    int i_T = 0;         // least m with l^m T^{-1} half-integral over Z_l
    int content = 0;     // largest m with l^{-m} T half-integral over Z_l
    int degree = 0;      // expected deg F_l: 2 v_l(f) or v_l(D)
};

LocalInvariants invariants_of(const HalfIntegralMatrix& T, std::int64_t l);

// Hasse invariant with the strict product over i < j. Kept only so the
// tests can show that this normalization breaks the odd-rank functional
// equation; nothing else uses it.
int hasse_strict(const HalfIntegralMatrix& T, std::int64_t l);

struct LocalPolynomial {
    std::int64_t l = 0;
    ZPoly F;
    std::string method;  // "closed", "oracle" or "density"
    bool oracle_verified = false;
};

// Closed forms for r <= 2 (r = 0 gives 1).
LocalPolynomial f_poly_closed(const HalfIntegralMatrix& T, std::int64_t l);

// Brute-force character sum over Sym_r(Q_l)/Sym_r(Z_l). Needs r <= 3 and
// v_l(D) <= 4; the enumeration also stops with bound_error once it has
// spent `budget` steps.
LocalPolynomial f_poly_oracle(const HalfIntegralMatrix& T, std::int64_t l,
                              long long budget = 30'000'000);

// Local-density route for odd l and any r: b_l(T; l^{-k}) is the density of
// T in the hyperbolic space H_k, split into primitive densities over the
// T-integral overlattices of Z_l^r, then F_l is interpolated from enough k.
LocalPolynomial f_poly_density(const HalfIntegralMatrix& T, std::int64_t l);

// Preferred method for (T, l), memoized. Rank 2 at l = 2 is cross-checked
// against the oracle whenever the oracle is in range.
LocalPolynomial f_poly(const HalfIntegralMatrix& T, std::int64_t l);

struct CheckResult {
    bool ok = true;
    std::string diagnostic;
};

// F_l(T; l^{-r-1}X^{-1}) against F_l(T; X) times the expected monomial.
CheckResult functional_equation_check(const HalfIntegralMatrix& T, std::int64_t l);
CheckResult functional_equation_check(const HalfIntegralMatrix& T, const ZPoly& F,
                                      std::int64_t l, int hasse);

// sum_{m=0}^r (-1)^m s_m({p^{j(2r-j+1)/2} X^j}) F_p(p^{r-m} T; X)
ZPoly s_poly_sum(const HalfIntegralMatrix& T, std::int64_t p);

// (R^{(r)}(X,1) / P^{(r)}(X,1)) times (1 - chi_p((-1)^{r/2} det T) p^{r/2} X)
// for even r.
ZPoly s_poly_closed(const HalfIntegralMatrix& T, std::int64_t p);

// The block recursion relating S_p(T1 + T2; X, 1) to S_p(T2; p^2 X, 1).
CheckResult katsurada_recursion_check(const HalfIntegralMatrix& T1,
                                      const HalfIntegralMatrix& T2, std::int64_t p);

} // namespace siegel
