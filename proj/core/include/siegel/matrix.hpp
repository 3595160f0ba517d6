#pragma once

#include "siegel/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace siegel {

// Dense integer matrix, row-major.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Integer> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Integer(0)) {}
    static IntMatrix identity(int n);

    Integer& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Integer& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

Integer determinant(const IntMatrix& m);  // Bareiss, square only
int rank(const IntMatrix& m);

// Column-style Hermite normal form of a full-rank square matrix: the
// canonical basis of the lattice spanned by the columns. Lower triangular,
// positive diagonal, entries left of the diagonal reduced into [0, d_ii).
IntMatrix hermite_columns(IntMatrix m);
// Same canonical basis for the lattice spanned by the columns of an r x c
// generator matrix of rank r.
IntMatrix lattice_hnf(IntMatrix gens);

// Exact inverse of a nonsingular integer matrix, row-major rationals.
std::vector<Rational> rational_inverse(const IntMatrix& m);

// T in Sym_n^*(Z), stored as G = 2T (symmetric, even diagonal).
class HalfIntegralMatrix {
public:
    HalfIntegralMatrix() = default;
    HalfIntegralMatrix(int n, std::vector<std::int64_t> gram2);
    static HalfIntegralMatrix from_gram(const IntMatrix& G);
    // T = diag(t_1, ..., t_n)
    static HalfIntegralMatrix diagonal(const std::vector<std::int64_t>& t);
    // Rows separated by ';', entries of 2T by ','. Empty string is degree 0.
    static HalfIntegralMatrix parse(const std::string& s);

    int degree() const { return n_; }
    std::int64_t g(int i, int j) const { return g_[static_cast<std::size_t>(i) * n_ + j]; }
    Rational t(int i, int j) const { return make_rational(static_cast<long>(g(i, j)), 2); }
    const std::vector<std::int64_t>& gram2() const { return g_; }
    IntMatrix gram() const;

    Integer det_gram2() const;  // det 2T
    Rational det() const;       // det T
    int rank() const;
    Integer trace() const;      // tr T
    bool is_psd() const;
    bool is_positive_definite() const;
    bool is_zero() const;

    HalfIntegralMatrix scaled(std::int64_t c) const;  // cT
    // U^T T U for an integer n x m matrix U.
    HalfIntegralMatrix transform(const IntMatrix& U) const;
    // blockdiag(*this, other)
    HalfIntegralMatrix direct_sum(const HalfIntegralMatrix& other) const;

    std::string to_string() const;  // parse() format

    friend auto operator<=>(const HalfIntegralMatrix&, const HalfIntegralMatrix&) = default;
    friend bool operator==(const HalfIntegralMatrix&, const HalfIntegralMatrix&) = default;

private:
    int n_ = 0;
    std::vector<std::int64_t> g_;
};

struct BlockDecomposition {
    IntMatrix U;               // unimodular, n x n
    HalfIntegralMatrix inner;  // T', positive definite of degree r
};

// U^T T U = blockdiag(T', 0). Rejects T that is not positive semidefinite.
BlockDecomposition block_decompose(const HalfIntegralMatrix& T);

// All T >= 0 of degree n with tr T <= trace_bound, ordered by trace, then
// diagonal, then off-diagonal entries (lexicographic). max_diag < 0 means no
// bound on individual diagonal entries.
std::vector<HalfIntegralMatrix> enumerate_psd(int n, int trace_bound, int max_diag = -1);

} // namespace siegel
