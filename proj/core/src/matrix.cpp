#include "siegel/matrix.hpp"

#include "siegel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace siegel {

namespace {

std::int64_t to_i64(const Integer& x)
{
    if (!x.fits_slong_p())
        throw bound_error("matrix entry exceeds 64 bits: " + x.get_str());
    return x.get_si();
}

// col_a <- x col_a + y col_b, col_b <- u col_a + v col_b (simultaneously).
void column_combine(IntMatrix& m, int ca, int cb, const Integer& x, const Integer& y,
                    const Integer& u, const Integer& v)
{
    for (int r = 0; r < m.rows; ++r) {
        Integer a = m(r, ca), b = m(r, cb);
        m(r, ca) = x * a + y * b;
        m(r, cb) = u * a + v * b;
    }
}

// Column echelon form of m by unimodular column operations, mirrored on V.
// Returns the number of nonzero (pivot) columns; they come first.
int column_echelon(IntMatrix& m, IntMatrix& V)
{
    int c = 0;
    for (int i = 0; i < m.rows && c < m.cols; ++i) {
        for (int j = c + 1; j < m.cols; ++j) {
            if (m(i, j) == 0)
                continue;
            if (m(i, c) == 0) {
                column_combine(m, c, j, 0, 1, 1, 0);
                column_combine(V, c, j, 0, 1, 1, 0);
                continue;
            }
            if (mpz_divisible_p(m(i, j).get_mpz_t(), m(i, c).get_mpz_t())) {
                Integer q = m(i, j) / m(i, c);
                column_combine(m, c, j, 1, 0, -q, 1);
                column_combine(V, c, j, 1, 0, -q, 1);
                continue;
            }
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m(i, c).get_mpz_t(), m(i, j).get_mpz_t());
            Integer u = -m(i, j) / g, v = m(i, c) / g;
            column_combine(m, c, j, x, y, u, v);
            column_combine(V, c, j, x, y, u, v);
        }
        if (m(i, c) != 0)
            ++c;
    }
    return c;
}

} // namespace

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
{
    if (x.cols != y.rows)
        throw domain_error("IntMatrix: shape mismatch in product");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0)
                continue;
            for (int j = 0; j < y.cols; ++j)
                z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

Integer determinant(const IntMatrix& m0)
{
    if (m0.rows != m0.cols)
        throw domain_error("determinant of a non-square matrix");
    const int n = m0.rows;
    if (n == 0)
        return 1;
    IntMatrix m = m0;
    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int s = k + 1;
            while (s < n && m(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m(k, j), m(s, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

int rank(const IntMatrix& m0)
{
    IntMatrix m = m0;
    IntMatrix V = IntMatrix::identity(m.cols);
    return column_echelon(m, V);
}

IntMatrix hermite_columns(IntMatrix m)
{
    if (m.cols != m.rows)
        throw domain_error("hermite_columns: square matrix expected");
    return lattice_hnf(std::move(m));
}

IntMatrix lattice_hnf(IntMatrix gens)
{
    const int n = gens.rows;
    IntMatrix V = IntMatrix::identity(gens.cols);
    if (column_echelon(gens, V) != n)
        throw domain_error("lattice_hnf: generators do not have full rank");
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = gens(i, j);
    for (int i = 0; i < n; ++i) {
        if (m(i, i) < 0)
            for (int r = 0; r < n; ++r)
                m(r, i) = -m(r, i);
        for (int j = 0; j < i; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(i, i).get_mpz_t());
            if (q == 0)
                continue;
            for (int r = 0; r < n; ++r)
                m(r, j) -= q * m(r, i);
        }
    }
    return m;
}

std::vector<Rational> rational_inverse(const IntMatrix& m0)
{
    const int n = m0.rows;
    if (m0.cols != n)
        throw domain_error("rational_inverse: square matrix expected");
    std::vector<Rational> a(static_cast<std::size_t>(n) * 2 * n);
    auto at = [&](int i, int j) -> Rational& { return a[static_cast<std::size_t>(i) * 2 * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            at(i, j) = m0(i, j);
        at(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && at(piv, c) == 0)
            ++piv;
        if (piv == n)
            throw domain_error("rational_inverse: matrix is singular");
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j)
                std::swap(at(c, j), at(piv, j));
        Rational inv = 1 / at(c, c);
        for (int j = 0; j < 2 * n; ++j)
            at(c, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || at(i, c) == 0)
                continue;
            Rational f = at(i, c);
            for (int j = 0; j < 2 * n; ++j)
                at(i, j) -= f * at(c, j);
        }
    }
    std::vector<Rational> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[static_cast<std::size_t>(i) * n + j] = at(i, n + j);
    return out;
}

HalfIntegralMatrix::HalfIntegralMatrix(int n, std::vector<std::int64_t> gram2) : n_(n), g_(std::move(gram2))
{
    if (n < 0 || g_.size() != static_cast<std::size_t>(n) * n)
        throw domain_error("HalfIntegralMatrix: expected " + std::to_string(n) + "x" + std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) {
        if (g(i, i) % 2 != 0)
            throw domain_error("HalfIntegralMatrix: diagonal of 2T must be even");
        for (int j = 0; j < i; ++j)
            if (g(i, j) != g(j, i))
                throw domain_error("HalfIntegralMatrix: 2T must be symmetric");
    }
}

HalfIntegralMatrix HalfIntegralMatrix::from_gram(const IntMatrix& G)
{
    if (G.rows != G.cols)
        throw domain_error("HalfIntegralMatrix: square matrix expected");
    std::vector<std::int64_t> g;
    for (const auto& x : G.a)
        g.push_back(to_i64(x));
    return HalfIntegralMatrix(G.rows, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::diagonal(const std::vector<std::int64_t>& t)
{
    const int n = static_cast<int>(t.size());
    std::vector<std::int64_t> g(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i) * n + i] = 2 * t[i];
    return HalfIntegralMatrix(n, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::parse(const std::string& s)
{
    std::vector<std::vector<std::int64_t>> rows;
    std::string body;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            body += ch;
    if (body.empty())
        return HalfIntegralMatrix(0, {});
    std::stringstream ss(body);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<std::int64_t> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(cell, &pos);
            } catch (const std::exception&) {
                throw domain_error("matrix: bad entry '" + cell + "'");
            }
            if (pos != cell.size())
                throw domain_error("matrix: bad entry '" + cell + "'");
            r.push_back(v);
        }
        rows.push_back(std::move(r));
    }
    const int n = static_cast<int>(rows.size());
    std::vector<std::int64_t> g;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw domain_error("matrix: '" + s + "' is not square");
        g.insert(g.end(), r.begin(), r.end());
    }
    return HalfIntegralMatrix(n, std::move(g));
}

IntMatrix HalfIntegralMatrix::gram() const
{
    IntMatrix G(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            G(i, j) = static_cast<long>(g(i, j));
    return G;
}

Integer HalfIntegralMatrix::det_gram2() const { return determinant(gram()); }

Rational HalfIntegralMatrix::det() const { return Rational(det_gram2()) / Rational(ipow(2, n_)); }

int HalfIntegralMatrix::rank() const { return siegel::rank(gram()); }

Integer HalfIntegralMatrix::trace() const
{
    Integer s = 0;
    for (int i = 0; i < n_; ++i)
        s += static_cast<long>(g(i, i) / 2);
    return s;
}

bool HalfIntegralMatrix::is_psd() const
{
    const IntMatrix G = gram();
    for (unsigned mask = 1; mask < (1u << n_); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        const int k = static_cast<int>(idx.size());
        IntMatrix sub(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                sub(a, b) = G(idx[a], idx[b]);
        if (determinant(sub) < 0)
            return false;
    }
    return true;
}

bool HalfIntegralMatrix::is_positive_definite() const
{
    const IntMatrix G = gram();
    for (int k = 1; k <= n_; ++k) {
        IntMatrix sub(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                sub(a, b) = G(a, b);
        if (determinant(sub) <= 0)
            return false;
    }
    return true;
}

bool HalfIntegralMatrix::is_zero() const
{
    return std::all_of(g_.begin(), g_.end(), [](std::int64_t x) { return x == 0; });
}

HalfIntegralMatrix HalfIntegralMatrix::scaled(std::int64_t c) const
{
    std::vector<std::int64_t> g = g_;
    for (auto& x : g) {
        if (x != 0 && std::abs(x) > std::numeric_limits<std::int64_t>::max() / std::abs(c))
            throw bound_error("matrix entry exceeds 64 bits after scaling");
        x *= c;
    }
    return HalfIntegralMatrix(n_, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::transform(const IntMatrix& U) const
{
    if (U.rows != n_)
        throw domain_error("HalfIntegralMatrix::transform: shape mismatch");
    return from_gram(U.transpose() * gram() * U);
}

HalfIntegralMatrix HalfIntegralMatrix::direct_sum(const HalfIntegralMatrix& o) const
{
    const int n = n_ + o.n_;
    std::vector<std::int64_t> g(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            g[static_cast<std::size_t>(i) * n + j] = this->g(i, j);
    for (int i = 0; i < o.n_; ++i)
        for (int j = 0; j < o.n_; ++j)
            g[static_cast<std::size_t>(n_ + i) * n + n_ + j] = o.g(i, j);
    return HalfIntegralMatrix(n, std::move(g));
}

std::string HalfIntegralMatrix::to_string() const
{
    std::string s;
    for (int i = 0; i < n_; ++i) {
        if (i)
            s += ';';
        for (int j = 0; j < n_; ++j) {
            if (j)
                s += ',';
            s += std::to_string(g(i, j));
        }
    }
    return s;
}

BlockDecomposition block_decompose(const HalfIntegralMatrix& T)
{
    if (!T.is_psd())
        throw domain_error("block_decompose: T = [" + T.to_string() + "] is not positive semidefinite");
    const int n = T.degree();
    IntMatrix m = T.gram();
    IntMatrix V = IntMatrix::identity(n);
    const int r = column_echelon(m, V);
    IntMatrix G = V.transpose() * T.gram() * V;
    IntMatrix inner(r, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < r && j < r)
                inner(i, j) = G(i, j);
            else if (G(i, j) != 0)
                throw consistency_error("block_decompose: kernel block is not zero");
        }
    return {V, HalfIntegralMatrix::from_gram(inner)};
}

std::vector<HalfIntegralMatrix> enumerate_psd(int n, int trace_bound, int max_diag)
{
    if (n < 1 || n > 4)
        throw bound_error("enumerate_psd: degree must be between 1 and 4");
    if (trace_bound < 0)
        throw domain_error("enumerate_psd: negative trace bound");
    constexpr std::size_t cap = 2'000'000;
    std::vector<HalfIntegralMatrix> out;
    std::vector<std::int64_t> diag(n);
    std::vector<std::pair<int, int>> offs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            offs.emplace_back(i, j);

    std::vector<std::int64_t> g(static_cast<std::size_t>(n) * n, 0);
    std::function<void(std::size_t)> fill_off = [&](std::size_t k) {
        if (k == offs.size()) {
            HalfIntegralMatrix T(n, g);
            if (T.is_psd()) {
                out.push_back(std::move(T));
                if (out.size() > cap)
                    throw bound_error("enumerate_psd: more than " + std::to_string(cap) + " matrices");
            }
            return;
        }
        auto [i, j] = offs[k];
        const std::int64_t bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(4 * diag[i] * diag[j])) + 1e-9);
        for (std::int64_t v = -bound; v <= bound; ++v) {
            if (v * v > 4 * diag[i] * diag[j])
                continue;
            g[static_cast<std::size_t>(i) * n + j] = g[static_cast<std::size_t>(j) * n + i] = v;
            fill_off(k + 1);
        }
        g[static_cast<std::size_t>(i) * n + j] = g[static_cast<std::size_t>(j) * n + i] = 0;
    };
    std::function<void(int, int)> fill_diag = [&](int i, int remaining) {
        if (i == n - 1) {
            if (max_diag >= 0 && remaining > max_diag)
                return;
            diag[i] = remaining;
            for (int a = 0; a < n; ++a)
                g[static_cast<std::size_t>(a) * n + a] = 2 * diag[a];
            fill_off(0);
            return;
        }
        const int top = max_diag >= 0 ? std::min(remaining, max_diag) : remaining;
        for (int v = 0; v <= top; ++v) {
            diag[i] = v;
            fill_diag(i + 1, remaining - v);
        }
    };
    for (int tr = 0; tr <= trace_bound; ++tr)
        fill_diag(0, tr);
    return out;
}

} // namespace siegel
