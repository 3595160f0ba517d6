#pragma once

#include "siegel/padic.hpp"
#include "siegel/rational.hpp"

#include <cstdint>
#include <string>

namespace siegel {

// chi = (d/.) * omega^b, always stored primitive. d is a fundamental
// discriminant (1 for no quadratic part) and 0 <= b < p-1. When b != 0 the
// prime p is odd and does not divide d: a factor (p*/.) with p* = +-p is
// folded into the Teichmueller exponent since (p*/.) = omega^{(p-1)/2}.
class CharacterSpec {
public:
    static CharacterSpec trivial();
    static CharacterSpec kronecker(const Integer& d);
    static CharacterSpec teichmuller_power(std::int64_t b, std::int64_t p);
    static CharacterSpec product(const Integer& d, std::int64_t b, std::int64_t p);

    const Integer& disc() const { return d_; }
    std::int64_t omega_exponent() const { return b_; }
    std::int64_t prime() const { return p_; }

    bool is_trivial() const { return d_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    Integer conductor() const;
    int parity() const;  // chi(-1)

    // Values. value() requires a rational-valued character.
    int value(const Integer& n) const;
    PadicInt value_padic(const Integer& n, int M) const;

    // chi^2 for a pure Teichmueller power.
    CharacterSpec squared() const;
    // chi * (d'/.)
    CharacterSpec times_kronecker(const Integer& d) const;

    std::string describe() const;

    friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;

private:
    Integer d_ = 1;
    std::int64_t b_ = 0;
    std::int64_t p_ = 0;
};

// Kronecker symbol for big discriminants.
int kronecker(const Integer& d, const Integer& m);

// B_{k,chi} for rational-valued chi. B_{1,trivial} = +1/2 here, which is the
// Bernoulli-polynomial convention (zeta(0) = -B_{1,1}/1 = -1/2).
Rational generalized_bernoulli(unsigned k, const CharacterSpec& chi);

// B_{k,chi} in Q_p, correct modulo p^M. Works for every chi whose values
// embed in Z_p.
PadicNumber generalized_bernoulli_padic(unsigned k, const CharacterSpec& chi, int M);

// L(1-k, chi) = -B_{k,chi}/k, times (1 - chi(p) p^{k-1}) when p is given
// (p = 0 means no Euler factor removed).
Rational dirichlet_L_neg(unsigned k, const CharacterSpec& chi, std::int64_t remove_p = 0);

// p-adic version, correct modulo p^M. When remove_p is set the prime removed
// is chi.prime() (or `p` for rational chi).
PadicNumber dirichlet_L_neg_padic(unsigned k, const CharacterSpec& chi, bool remove_p,
                                  std::int64_t p, int M);

} // namespace siegel
