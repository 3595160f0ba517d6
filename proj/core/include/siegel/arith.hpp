#pragma once

#include "siegel/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace siegel {

// Kronecker symbol (d/m). d must be 0 or 1 mod 4.
int kronecker_symbol(std::int64_t d, std::int64_t m);

// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
int legendre(const Integer& a, std::int64_t p);

// Hilbert symbol (a, b)_l over Q_l, including l = 2.
int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t l);

// Hilbert symbol at the real place: -1 iff both arguments are negative.
int hilbert_symbol_real(const Rational& a, const Rational& b);

struct DiscriminantSplit {
    Integer d;  // fundamental discriminant, 1 allowed
    Integer f;  // positive
};

// D = d f^2 with d fundamental. D must be nonzero and 0 or 1 mod 4.
DiscriminantSplit fundamental_discriminant_decompose(const Integer& D);

inline constexpr std::int64_t default_factor_bound = 10'000'000;

// Complete factorization by trial division. Trial divisors are capped at
// `bound`; a cofactor that cannot be certified prime below the cap raises
// bound_error instead of running on.
std::vector<std::pair<std::int64_t, int>> factor(const Integer& m,
                                                 std::int64_t bound = default_factor_bound);

std::vector<std::int64_t> prime_divisors(const Integer& m,
                                         std::int64_t bound = default_factor_bound);

bool is_prime(std::int64_t n);

Integer binomial(unsigned n, unsigned k);

// B_k with B_1 = -1/2.
Rational bernoulli(unsigned k);

// B_k(x) = sum_j C(k, j) B_j x^{k-j}.
Rational bernoulli_polynomial(unsigned k, const Rational& x);

} // namespace siegel
