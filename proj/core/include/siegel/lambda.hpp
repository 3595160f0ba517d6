#pragma once

#include "siegel/character.hpp"
#include "siegel/eisenstein.hpp"
#include "siegel/matrix.hpp"
#include "siegel/padic.hpp"
#include "siegel/poly.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace siegel {

struct LambdaConfig {
    int M = 12;     // p-adic precision of stored coefficients
    int N = 8;      // X-adic precision
    int G = 4;      // guard nodes beyond the M+N-1 the interpolation needs
    int delta = 2;  // slack allowed when a specialization divides by poles
};

// Element of Z_p[[X]] modulo (p^M, X^N). M_eff certifies evaluation: for any
// x with v_p(x) >= 1 the value f(x) is right modulo p^{M_eff}. Truncating at
// X^N alone already costs p^N there, so M_eff <= min(M, N).
class LambdaElement {
public:
    LambdaElement() = default;
    LambdaElement(std::int64_t p, int M, int N, int M_eff, std::vector<Integer> coeffs);

    static LambdaElement zero(std::int64_t p, int M, int N);
    static LambdaElement constant(std::int64_t p, int M, int N, const Rational& c);
    static LambdaElement constant(const PadicInt& c, int N);
    // Exact polynomial with p-integral coefficients, truncated at X^N.
    static LambdaElement from_qpoly(const QPoly& f, std::int64_t p, int M, int N);

    std::int64_t prime() const { return p_; }
    int precision() const { return M_; }
    int x_precision() const { return N_; }
    int certified() const { return M_eff_; }
    const std::vector<Integer>& coeffs() const { return c_; }
    PadicInt coeff(int i) const { return PadicInt(p_, M_, c_.at(static_cast<std::size_t>(i))); }
    bool is_zero() const;
    int min_valuation() const;  // M for the zero element

    LambdaElement with_certificate(int M_eff) const;

    // Needs v_p(x) >= 1; the result carries abs precision M_eff.
    PadicNumber eval(const PadicNumber& x) const;
    PadicNumber eval(const Rational& x) const;

    LambdaElement operator-() const;
    friend LambdaElement operator+(const LambdaElement& a, const LambdaElement& b);
    friend LambdaElement operator-(const LambdaElement& a, const LambdaElement& b);
    friend LambdaElement operator*(const LambdaElement& a, const LambdaElement& b);
    friend bool operator==(const LambdaElement& a, const LambdaElement& b);

    std::string to_string() const;

private:
    std::int64_t p_ = 0;
    int M_ = 0, N_ = 0, M_eff_ = 0;
    std::vector<Integer> c_;
};

// The factor list of B^{(n)}: lin_j = (1+p)^{-j}(1+X) - 1 for j = 0..[n/2]
// (indices 0..[n/2]), then sq_i = (1+p)^{-2i}(1+X)^2 - 1 for i = 1..[n/2].
struct BPolynomial {
    int n = 0;
    std::int64_t p = 0;
    std::vector<QPoly> factors;
    std::vector<std::string> names;
    QPoly product;
    // product == X prod_i lin_i^2 ((1+p)^{-i}(1+X) + 1)
    bool forms_agree = false;

    int lin_index(int j) const { return j; }
    int sq_index(int i) const { return n / 2 + i; }
    LambdaElement as_lambda(int M, int N) const;
};

BPolynomial b_poly(int n, std::int64_t p);

// A_T(omega^a; X) as numerator / product of B-factors.
struct FracLambda {
    LambdaElement num;
    std::vector<int> den_atoms;  // indices into BPolynomial::factors, sorted

    PadicNumber eval(const Rational& x, const BPolynomial& B) const;
    // num * (B / den); throws if an atom is not a B-factor
    LambdaElement cleared(const BPolynomial& B) const;
};

// Kubota-Leopoldt branch through Psi(xi omega^b; (1+p)^k - 1) =
// L^{p}(1-k, xi omega^{b-k}). `chi` is xi omega^b in normalized form.
struct BranchSeries {
    CharacterSpec chi;
    std::int64_t p = 0;
    bool trivial_branch = false;  // Psi = Phi / X
    bool vanishes = false;        // odd chi: every interpolated value is 0
    std::vector<int> nodes;       // weights k used for interpolation
    std::vector<int> held_out;    // weights kept back for certification
    std::vector<Integer> full;    // every coefficient of the interpolant mod p^M
    LambdaElement phi;            // truncated at X^N
    int held_out_valuation = 0;   // worst agreement seen at held_out
};

BranchSeries build_branch(const CharacterSpec& chi, std::int64_t p, const LambdaConfig& cfg);
// Shared, memoized; safe to call from several threads.
std::shared_ptr<const BranchSeries> branch(const Integer& d, std::int64_t b, std::int64_t p,
                                           const LambdaConfig& cfg);

// Exact L^{p}(1-k, xi omega^{b-k}) image that Psi should reproduce at
// (1+p)^k - 1 (k congruent to b keeps it rational).
Rational branch_target(const BranchSeries& s, int k);
// Psi((1+p)^k - 1), or Phi there for the trivial branch.
PadicNumber branch_phi_at(const BranchSeries& s, int k);

// f(u(X)) mod X^N. u(0) must lie in pZ_p. The branch version composes the
// whole interpolant, which keeps every coefficient exact mod p^M; the
// truncated version keeps the evaluation certificate only.
LambdaElement compose(const BranchSeries& f, const QPoly& u, const LambdaConfig& cfg);
LambdaElement compose(const LambdaElement& f, const QPoly& u);

// (1+X)^s = sum_k C(s, k) X^k. s must be known mod p^{M + v_p((N-1)!)}.
LambdaElement one_plus_X_pow(const PadicInt& s, int M, int N);

// A_T(omega^a; X) for T of degree n.
FracLambda a_T_lambda(int n, int a, const HalfIntegralMatrix& T, std::int64_t p,
                      const LambdaConfig& cfg);

// Value at X = eps(1+p)(1+p)^kappa - 1. Only eps of order 1 is supported;
// anything else needs values in a ramified extension of Q_p.
PadicNumber specialize(const FracLambda& f, int n, std::int64_t p, int kappa,
                       int epsilon_order = 1);

// T -> B^{(n)}(X) A_T(omega^a; X) over all T with tr T <= trace_bound.
QExpansion<LambdaElement> lambda_eisenstein(int n, int a, std::int64_t p,
                                            std::int64_t trace_bound, const LambdaConfig& cfg,
                                            int jobs = 1);

} // namespace siegel
