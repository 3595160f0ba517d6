#pragma once

#include "siegel/character.hpp"
#include "siegel/errors.hpp"
#include "siegel/matrix.hpp"
#include "siegel/padic.hpp"
#include "siegel/poly.hpp"
#include "siegel/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace siegel {

// E_kappa^{(n)}(chi). chi is trivial (level 1) or a Teichmueller power
// omega^b (level p).
struct EisensteinSpec {
    int n = 1;
    int kappa = 4;
    CharacterSpec chi = CharacterSpec::trivial();

    static EisensteinSpec make(int n, int kappa,
                               const CharacterSpec& chi = CharacterSpec::trivial());
    Integer level() const { return chi.conductor(); }
    std::string describe() const;
};

// Formal q-expansion: coefficients keyed by the exact matrix T (not by its
// GL_n(Z) class). `bound` is the trace bound the key set was built for;
// u_pn_apply divides it by p. Reading a missing key is an error.
template <class V>
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(int genus, std::int64_t bound, std::string descriptor)
        : genus_(genus), bound_(bound), descriptor_(std::move(descriptor))
    {
    }

    int genus() const { return genus_; }
    std::int64_t bound() const { return bound_; }
    const std::string& descriptor() const { return descriptor_; }
    std::size_t size() const { return keys_.size(); }
    const std::vector<HalfIntegralMatrix>& keys() const { return keys_; }

    void insert(const HalfIntegralMatrix& T, V v)
    {
        if (T.degree() != genus_)
            throw domain_error("QExpansion: key " + T.to_string() + " has the wrong degree");
        if (!T.is_psd())
            throw domain_error("QExpansion: key " + T.to_string() + " is not positive semidefinite");
        auto [it, fresh] = values_.emplace(T, std::move(v));
        if (!fresh)
            throw domain_error("QExpansion: duplicate key " + T.to_string());
        keys_.push_back(T);
    }

    bool contains(const HalfIntegralMatrix& T) const { return values_.count(T) != 0; }

    const V& at(const HalfIntegralMatrix& T) const
    {
        auto it = values_.find(T);
        if (it == values_.end())
            throw bound_error("insufficient index bound: no coefficient at " + T.to_string() +
                              " (bound " + std::to_string(bound_) + ")");
        return it->second;
    }

    friend bool operator==(const QExpansion& a, const QExpansion& b)
    {
        return a.genus_ == b.genus_ && a.keys_ == b.keys_ && a.values_ == b.values_;
    }

private:
    int genus_ = 0;
    std::int64_t bound_ = 0;
    std::string descriptor_;
    std::vector<HalfIntegralMatrix> keys_;
    std::map<HalfIntegralMatrix, V> values_;
};

// Keys T with p tr(T) <= bound, mapped to the source value at pT.
template <class V>
QExpansion<V> u_pn_apply(const QExpansion<V>& e, std::int64_t p)
{
    if (p < 2)
        throw domain_error("u_pn_apply: p must be a prime");
    QExpansion<V> out(e.genus(), e.bound() / p, e.descriptor() + "|U_p");
    for (const auto& T : e.keys()) {
        if (T.trace() * p > e.bound())
            continue;
        out.insert(T, e.at(T.scaled(p)));
    }
    return out;
}

// Block data of T: T' of rank r, the fundamental discriminant d of
// (-1)^{r/2} D for even r, and the primes whose F_l enter the coefficient
// (l | f for even r, l | D for odd r).
struct CoefficientData {
    int r = 0;
    HalfIntegralMatrix inner;
    Integer d = 1;
    std::vector<std::int64_t> primes;
};

CoefficientData coefficient_data(int n, const HalfIntegralMatrix& T);

Rational constant_term(const EisensteinSpec& spec);
PadicNumber constant_term_padic(const EisensteinSpec& spec, int M);

// Level-one coefficient A_T(E_kappa^{(n)}); kappa even, chi trivial.
Rational fourier_coeff(const EisensteinSpec& spec, const HalfIntegralMatrix& T);

// A_T(E_kappa^{(n)}(chi)) for chi = omega^b with chi^2 nontrivial, in Q_p
// modulo p^M.
PadicNumber fourier_coeff_chi(const EisensteinSpec& spec, const HalfIntegralMatrix& T, int M);

// A_T of the semi-ordinary p-stabilization, from its closed form.
Rational stabilized_coeff(int n, int kappa, std::int64_t p, const HalfIntegralMatrix& T);

// All PSD T of degree n with tr T <= trace_bound.
QExpansion<Rational> eisenstein_expansion(const EisensteinSpec& spec, std::int64_t trace_bound,
                                          int jobs = 1);
QExpansion<PadicNumber> nebentypus_expansion(const EisensteinSpec& spec,
                                             std::int64_t trace_bound, int M, int jobs = 1);
QExpansion<Rational> stabilized_expansion(int n, int kappa, std::int64_t p,
                                          std::int64_t trace_bound, int jobs = 1);

// Only the keys p^i T, 0 <= i <= depth, for tr T <= target_bound. This is all
// an operator of degree `depth` in U_{p,n} reads, and avoids enumerating
// every matrix of trace up to p^depth * target_bound. The recorded bound is
// p^depth * target_bound.
QExpansion<Rational> eisenstein_expansion_orbit(const EisensteinSpec& spec, std::int64_t p,
                                                std::int64_t target_bound, int depth,
                                                int jobs = 1);

// sum_i phi_i (e | U^i), restricted to the keys every U^i can reach.
QExpansion<Rational> apply_u_polynomial(const QExpansion<Rational>& e, const QPoly& phi,
                                        std::int64_t p, const std::string& descriptor);

// (P(x,1)/R(x,1)) e | R~(x, U), x = p^{kappa-n-1}. Needs bound >= p^n * target.
QExpansion<Rational> stabilize_via_operator(int n, int kappa, std::int64_t p,
                                            const QExpansion<Rational>& e);

// (P(x,1)/Q*(1)) e | Q~*(U). Needs bound >= p^d * target, d = deg Q*.
QExpansion<Rational> stabilize_via_q_star(int n, int kappa, std::int64_t p,
                                          const QExpansion<Rational>& e);

// Degrees of the two operators in U_{p,n}.
int operator_depth(int n);
int q_star_depth(int n);

} // namespace siegel
