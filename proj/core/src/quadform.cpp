#include "siegel/quadform.hpp"

#include "siegel/arith.hpp"
#include "siegel/errors.hpp"
#include "siegel/stabilization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace siegel {

namespace {

__extension__ using i128 = __int128;


// Rational diagonalization of T by symmetric elimination. Zero entries mark
// the radical when T is degenerate.
std::vector<Rational> diagonalize(const HalfIntegralMatrix& T)
{
    const int n = T.degree();
    std::vector<Rational> m(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> Rational& { return m[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            at(i, j) = T.t(i, j);
    std::vector<Rational> diag;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) == 0) {
            int j = k + 1;
            while (j < n && at(j, j) == 0)
                ++j;
            if (j < n) {
                for (int c = 0; c < n; ++c)
                    std::swap(at(k, c), at(j, c));
                for (int c = 0; c < n; ++c)
                    std::swap(at(c, k), at(c, j));
            } else {
                j = k + 1;
                while (j < n && at(k, j) == 0)
                    ++j;
                if (j < n) {
                    // e_k <- e_k + e_j makes the diagonal entry 2 T_kj.
                    for (int c = 0; c < n; ++c)
                        at(k, c) += at(j, c);
                    for (int c = 0; c < n; ++c)
                        at(c, k) += at(c, j);
                }
            }
        }
        const Rational piv = at(k, k);
        diag.push_back(piv);
        if (piv == 0)
            continue;
        for (int i = k + 1; i < n; ++i) {
            if (at(i, k) == 0)
                continue;
            Rational f = at(i, k) / piv;
            for (int c = 0; c < n; ++c)
                at(i, c) -= f * at(k, c);
            for (int c = 0; c < n; ++c)
                at(c, i) -= f * at(c, k);
        }
    }
    return diag;
}

int hasse_product(const std::vector<Rational>& a, std::int64_t l, bool include_diagonal)
{
    int h = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = include_diagonal ? i : i + 1; j < a.size(); ++j)
            h *= hilbert_symbol(a[i], a[j], l);
    return h;
}

void require_nondegenerate(const HalfIntegralMatrix& T, const char* who)
{
    if (T.degree() > 0 && T.det_gram2() == 0)
        throw domain_error(std::string(who) + ": T = [" + T.to_string() + "] is degenerate");
}

// Sum_{i=0}^{n} a^i X^{ei}, or 0 for n < 0.
ZPoly geometric(const Integer& a, unsigned e, int n)
{
    ZPoly s;
    Integer pw = 1;
    for (int i = 0; i <= n; ++i) {
        s = s + ZPoly::monomial(pw, e * static_cast<unsigned>(i));
        pw *= a;
    }
    return s;
}

// Cofactor of b_l / F_l: numerator and denominator as polynomials.
std::pair<ZPoly, ZPoly> b_cofactor(int r, std::int64_t l, int chi)
{
    ZPoly den({1, -1});
    for (int i = 1; i <= r / 2; ++i)
        den = den * ZPoly({Integer(1), Integer(0), Integer(-ipow(l, 2u * i))});
    ZPoly num = ZPoly::constant(1);
    if (r % 2 == 0 && r > 0)
        num = ZPoly({Integer(1), Integer(-chi * ipow(l, static_cast<unsigned>(r / 2)))});
    return {num, den};
}

std::int64_t ipow64(std::int64_t b, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

std::int64_t mod64(std::int64_t x, std::int64_t q)
{
    x %= q;
    return x < 0 ? x + q : x;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t q)
{
    std::int64_t g = q, x = 0, y = 1, aa = mod64(a, q);
    while (aa != 0) {
        std::int64_t t = g / aa;
        g -= t * aa;
        std::swap(g, aa);
        x -= t * y;
        std::swap(x, y);
    }
    return mod64(x, q);
}

// ---------------------------------------------------------------- oracle

struct Oracle {
    int r = 0;
    std::int64_t l = 0;
    int K = 0;
    std::vector<std::int64_t> G;
    long long budget = 0;
    long long steps = 0;
    std::vector<std::pair<int, int>> pos;         // upper-triangular slots
    std::vector<std::vector<long long>> counts;   // [v][exponent mod l^K]
    std::int64_t lK = 1;

    int val(std::int64_t x, int t) const
    {
        if (x == 0)
            return t;
        int v = 0;
        while (x % l == 0) {
            x /= l;
            ++v;
        }
        return v;
    }

    // min(a_i, t) for the elementary divisors l^{a_i} of A modulo l^t.
    std::vector<int> elementary(std::vector<std::int64_t> a, int t)
    {
        if (++steps > budget)
            throw bound_error("f_poly_oracle: enumeration budget exceeded");
        const std::int64_t q = ipow64(l, t);
        for (auto& x : a)
            x = mod64(x, q);
        std::vector<int> out;
        std::vector<bool> rdone(r, false), cdone(r, false);
        for (int step = 0; step < r; ++step) {
            int bi = -1, bj = -1, bv = t;
            for (int i = 0; i < r; ++i) {
                if (rdone[i])
                    continue;
                for (int j = 0; j < r; ++j) {
                    if (cdone[j])
                        continue;
                    int v = val(a[i * r + j], t);
                    if (v < bv) {
                        bv = v;
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi < 0) {
                while (static_cast<int>(out.size()) < r)
                    out.push_back(t);
                break;
            }
            const std::int64_t lv = ipow64(l, bv);
            const std::int64_t u_inv = inv_mod(a[bi * r + bj] / lv, q);
            for (int i = 0; i < r; ++i) {
                if (i == bi || rdone[i] || a[i * r + bj] == 0)
                    continue;
                std::int64_t f = static_cast<std::int64_t>((static_cast<i128>(a[i * r + bj] / lv) * u_inv) % q);
                for (int j = 0; j < r; ++j)
                    a[i * r + j] = mod64(static_cast<std::int64_t>(a[i * r + j] - static_cast<i128>(f) * a[bi * r + j] % q), q);
            }
            rdone[bi] = true;
            cdone[bj] = true;
            out.push_back(bv);
        }
        return out;
    }

    void descend(std::vector<std::int64_t>& A, int t, int m)
    {
        const std::size_t P = pos.size();
        const std::int64_t lt = ipow64(l, t);
        const std::int64_t total = ipow64(l, static_cast<int>(P));
        for (std::int64_t code = (t == 0 ? 1 : 0); code < total; ++code) {
            std::int64_t c = code;
            for (std::size_t k = 0; k < P; ++k) {
                auto [i, j] = pos[k];
                std::int64_t digit = c % l;
                c /= l;
                A[i * r + j] += digit * lt;
                if (i != j)
                    A[j * r + i] += digit * lt;
            }
            std::vector<int> b = elementary(A, t + 1);
            int bound = 0;
            for (int x : b)
                if (x < t + 1)
                    bound += m - x;
            if (bound <= K) {
                if (t + 1 == m) {
                    // tr(TA) with T = G/2, mapped into exponents of zeta_{l^K}.
                    i128 x = 0;
                    for (int i = 0; i < r; ++i) {
                        x += static_cast<i128>(G[i * r + i] / 2) * A[i * r + i];
                        for (int j = i + 1; j < r; ++j)
                            x += static_cast<i128>(G[i * r + j]) * A[i * r + j];
                    }
                    const std::int64_t lm = ipow64(l, m);
                    std::int64_t e = static_cast<std::int64_t>(((x % lm) + lm) % lm) * ipow64(l, K - m);
                    counts[bound][e] += 1;
                } else {
                    descend(A, t + 1, m);
                }
            }
            c = code;
            for (std::size_t k = 0; k < P; ++k) {
                auto [i, j] = pos[k];
                std::int64_t digit = c % l;
                c /= l;
                A[i * r + j] -= digit * lt;
                if (i != j)
                    A[j * r + i] -= digit * lt;
            }
        }
    }

    std::vector<Integer> run()
    {
        lK = ipow64(l, K);
        counts.assign(K + 1, std::vector<long long>(lK, 0));
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j)
                pos.emplace_back(i, j);
        counts[0][0] += 1;  // R = 0
        for (int m = 1; m <= K; ++m) {
            std::vector<std::int64_t> A(r * r, 0);
            descend(A, 0, m);
        }
        // Reduce each sum in Z[zeta_{l^K}] to the power basis below phi(l^K).
        const std::int64_t step = ipow64(l, K - 1);
        const std::int64_t phi = (l - 1) * step;
        std::vector<Integer> b;
        for (int k = 0; k <= K; ++k) {
            auto& c = counts[k];
            for (std::int64_t e = lK - 1; e >= phi; --e) {
                if (c[e] == 0)
                    continue;
                std::int64_t u = e - phi;
                for (std::int64_t i = 0; i <= l - 2; ++i)
                    c[i * step + u] -= c[e];
                c[e] = 0;
            }
            for (std::int64_t e = 1; e < phi; ++e)
                if (c[e] != 0)
                    throw consistency_error("f_poly_oracle: non-integer character sum at X^" + std::to_string(k));
            b.emplace_back(static_cast<long>(c[0]));
        }
        return b;
    }
};

// F from b by dividing out the cofactor, checking the tail beyond `degree`.
ZPoly f_from_b(const ZPoly& b, int r, std::int64_t l, int chi, int degree, std::size_t terms, const char* who)
{
    auto [num, den] = b_cofactor(r, l, chi);
    ZPoly F = series_divide(b * num, den, terms);
    if (F[0] != 1)
        throw consistency_error(std::string(who) + ": F(0) = " + F[0].get_str());
    for (std::size_t i = static_cast<std::size_t>(degree) + 1; i < terms; ++i)
        if (F[i] != 0)
            throw consistency_error(std::string(who) + ": coefficient of X^" + std::to_string(i) +
                                    " beyond the expected degree is " + F[i].get_str());
    return F.truncated(static_cast<std::size_t>(degree) + 1);
}

// ---------------------------------------------------------------- density

// Orders of orthogonal groups and isotropic counts over F_q.
Integer ortho_order(int dim, int eps, std::int64_t q)
{
    if (dim == 0)
        return 1;
    if (dim % 2 == 1) {
        int m = dim / 2;
        Integer o = 2 * ipow(q, static_cast<unsigned>(m * m));
        for (int i = 1; i <= m; ++i)
            o *= ipow(q, 2u * i) - 1;
        return o;
    }
    int m = dim / 2;
    Integer o = 2 * ipow(q, static_cast<unsigned>(m * (m - 1))) * (ipow(q, static_cast<unsigned>(m)) - eps);
    for (int i = 1; i < m; ++i)
        o *= ipow(q, 2u * i) - 1;
    return o;
}

Integer isotropic_count(int dim, int eps, std::int64_t q)
{
    if (dim == 0)
        return 0;
    if (dim % 2 == 1)
        return ipow(q, static_cast<unsigned>(dim - 1)) - 1;
    int m = dim / 2;
    return (ipow(q, static_cast<unsigned>(m)) - eps) * (ipow(q, static_cast<unsigned>(m - 1)) + eps);
}

// Rank and (for even rank) the type of the nondegenerate part of the
// quadratic form with Gram matrix G mod l.
std::pair<int, int> mod_l_type(const IntMatrix& G, std::int64_t l)
{
    const int n = G.rows;
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Integer x;
            mpz_fdiv_r_ui(x.get_mpz_t(), G(i, j).get_mpz_t(), static_cast<unsigned long>(l));
            a[i * n + j] = x.get_si();
        }
    auto at = [&](int i, int j) -> std::int64_t& { return a[i * n + j]; };
    std::int64_t disc = 1;
    int s = 0;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) == 0) {
            int j = k + 1;
            while (j < n && at(j, j) == 0)
                ++j;
            if (j < n) {
                for (int c = 0; c < n; ++c)
                    std::swap(at(k, c), at(j, c));
                for (int c = 0; c < n; ++c)
                    std::swap(at(c, k), at(c, j));
            } else {
                j = k + 1;
                while (j < n && at(k, j) == 0)
                    ++j;
                if (j < n) {
                    for (int c = 0; c < n; ++c)
                        at(k, c) = mod64(at(k, c) + at(j, c), l);
                    for (int c = 0; c < n; ++c)
                        at(c, k) = mod64(at(c, k) + at(c, j), l);
                }
            }
        }
        const std::int64_t piv = at(k, k);
        if (piv == 0)
            continue;
        ++s;
        disc = mod64(disc * piv, l);
        const std::int64_t pinv = inv_mod(piv, l);
        for (int i = k + 1; i < n; ++i) {
            if (at(i, k) == 0)
                continue;
            std::int64_t f = mod64(at(i, k) * pinv, l);
            for (int c = 0; c < n; ++c)
                at(i, c) = mod64(at(i, c) - f * at(k, c), l);
            for (int c = 0; c < n; ++c)
                at(c, i) = mod64(at(c, i) - f * at(c, k), l);
        }
    }
    int eps = 0;
    if (s % 2 == 0) {
        std::int64_t x = (s / 2) % 2 ? -disc : disc;
        eps = legendre(Integer(static_cast<long>(x)), l);
    }
    return {s, eps};
}

} // namespace

// ------------------------------------------------------------- invariants

int chi_local(const Rational& x, std::int64_t l)
{
    if (x == 0)
        throw domain_error("chi_local: zero argument");
    int v = valuation(x, l);
    if (v % 2 != 0)
        return 0;
    Rational u = x / rpow(l, v);
    Integer w = u.get_num() * u.get_den();
    if (l != 2)
        return legendre(w, l);
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), w.get_mpz_t(), 8);
    if (r == 1)
        return 1;
    if (r == 5)
        return -1;
    return 0;
}

LocalInvariants invariants_of(const HalfIntegralMatrix& T, std::int64_t l)
{
    require_nondegenerate(T, "invariants_of");
    LocalInvariants inv;
    const int r = T.degree();
    inv.r = r;
    inv.l = l;
    inv.det = T.det();
    // D = det(2T) for even r, det(2T)/2 for odd r.
    inv.D = (r % 2 == 0) ? T.det_gram2() : Integer(T.det_gram2() / 2);
    if (r == 0) {
        inv.det = 1;
        inv.D = 1;
        return inv;
    }
    if (r % 2 == 0) {
        Integer sD = ((r / 2) % 2 == 0) ? inv.D : Integer(-inv.D);
        auto split = fundamental_discriminant_decompose(sD);
        inv.d = split.d;
        inv.f = split.f;
        inv.chi = chi_local(((r / 2) % 2 == 0) ? inv.det : Rational(-inv.det), l);
        inv.degree = 2 * valuation(inv.f, l);
    } else {
        inv.degree = valuation(inv.D, l);
    }
    auto diag = diagonalize(T);
    inv.hasse = hasse_product(diag, l, true);
    if (r % 2 == 1) {
        Rational s = ((r - 1) / 2) % 2 == 0 ? inv.det : Rational(-inv.det);
        inv.eta = inv.hasse * hilbert_symbol(inv.det, s, l);
        if (((r * r - 1) / 8) % 2 == 1)
            inv.eta *= hilbert_symbol(-1, -1, l);
    }
    // i(T): T^{-1} = 2 G^{-1}. Off-diagonal entries only need to be half
    // integral, which matters at l = 2.
    auto Ginv = rational_inverse(T.gram());
    int m = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rational e = 2 * Ginv[static_cast<std::size_t>(i) * r + j];
            if (e == 0)
                continue;
            int need = -valuation(e, l);
            if (i != j && l == 2)
                need -= 1;
            m = std::max(m, need);
        }
    inv.i_T = m;
    int a = -1;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            const std::int64_t g = T.g(i, j);
            if (g == 0)
                continue;
            int v = valuation(Integer(static_cast<long>(g)), l);
            if (i == j && l == 2)
                v -= 1;
            a = (a < 0) ? v : std::min(a, v);
        }
    inv.content = std::max(a, 0);
    return inv;
}

int hasse_strict(const HalfIntegralMatrix& T, std::int64_t l)
{
    require_nondegenerate(T, "hasse_strict");
    return hasse_product(diagonalize(T), l, false);
}

// ---------------------------------------------------------- closed forms

LocalPolynomial f_poly_closed(const HalfIntegralMatrix& T, std::int64_t l)
{
    require_nondegenerate(T, "f_poly_closed");
    const int r = T.degree();
    LocalPolynomial out;
    out.l = l;
    out.method = "closed";
    if (r == 0) {
        out.F = ZPoly::constant(1);
        return out;
    }
    if (r == 1) {
        Integer t = static_cast<long>(T.g(0, 0) / 2);
        out.F = geometric(static_cast<long>(l), 1, valuation(t, l));
        return out;
    }
    if (r != 2)
        throw domain_error("f_poly_closed: only ranks 0, 1 and 2 have a closed form");
    const LocalInvariants inv = invariants_of(T, l);
    const int vf = valuation(inv.f, l);
    const Integer L = static_cast<long>(l);
    const Integer l3 = L * L * L;
    ZPoly F;
    // The outer sum runs over the content exponent of T. Bounding it by i(T)
    // instead overcounts whenever T is not l-modular (e.g. diag(1, 9) at 3).
    for (int i = 0; i <= inv.content; ++i) {
        ZPoly inner = geometric(l3, 2, vf - i) - ZPoly::monomial(inv.chi * L, 1) * geometric(l3, 2, vf - i - 1);
        F = F + ZPoly::monomial(ipow(l, 2u * i), static_cast<unsigned>(i)) * inner;
    }
    out.F = F;
    return out;
}

// ---------------------------------------------------------------- oracle

LocalPolynomial f_poly_oracle(const HalfIntegralMatrix& T, std::int64_t l, long long budget)
{
    require_nondegenerate(T, "f_poly_oracle");
    const int r = T.degree();
    LocalPolynomial out;
    out.l = l;
    out.method = "oracle";
    out.oracle_verified = true;
    if (r == 0) {
        out.F = ZPoly::constant(1);
        return out;
    }
    const LocalInvariants inv = invariants_of(T, l);
    if (r > 3 || valuation(inv.D, l) > 4)
        throw bound_error("f_poly_oracle: T = [" + T.to_string() + "] at l = " + std::to_string(l) +
                          " is outside the oracle range (r <= 3, v_l(D) <= 4)");
    Oracle o;
    o.r = r;
    o.l = l;
    o.K = inv.degree + 1;
    o.G = T.gram2();
    o.budget = budget;
    ZPoly b(o.run());
    out.F = f_from_b(b, r, l, inv.chi, inv.degree, static_cast<std::size_t>(o.K) + 1, "f_poly_oracle");
    return out;
}

// ---------------------------------------------------------------- density

LocalPolynomial f_poly_density(const HalfIntegralMatrix& T, std::int64_t l)
{
    require_nondegenerate(T, "f_poly_density");
    if (l == 2)
        throw domain_error("f_poly_density: l must be odd");
    const int r = T.degree();
    LocalPolynomial out;
    out.l = l;
    out.method = "density";
    if (r == 0) {
        out.F = ZPoly::constant(1);
        return out;
    }
    const LocalInvariants inv = invariants_of(T, l);
    const IntMatrix G = T.gram();

    // Every T-integral overlattice sits inside G^{-1} Z_l^r, hence inside
    // l^{-E} Z_l^r. Bases are stored scaled by l^E to stay integral.
    int E = 0;
    for (const auto& x : rational_inverse(G))
        if (x != 0)
            E = std::max(E, -valuation(x, l));
    const Integer lE = ipow(l, static_cast<unsigned>(E));
    const Integer l2E = lE * lE;
    const Integer L = static_cast<long>(l);

    std::vector<std::vector<Integer>> lines;  // P^{r-1}(F_l)
    for (int lead = 0; lead < r; ++lead) {
        const int free = r - 1 - lead;
        const std::int64_t total = ipow64(l, free);
        for (std::int64_t code = 0; code < total; ++code) {
            std::vector<Integer> c(r, 0);
            c[lead] = 1;
            std::int64_t x = code;
            for (int k = lead + 1; k < r; ++k) {
                c[k] = static_cast<long>(x % l);
                x /= l;
            }
            lines.push_back(std::move(c));
        }
    }

    using Key = std::tuple<int, int, int>;  // (v, s, eps)
    std::map<Key, Integer> counts;
    std::set<std::vector<Integer>> level;
    IntMatrix B0 = IntMatrix::identity(r);
    for (auto& x : B0.a)
        x *= lE;
    level.insert(B0.a);
    for (int v = 0; !level.empty(); ++v) {
        std::set<std::vector<Integer>> next;
        for (const auto& flat : level) {
            IntMatrix B(r, r);
            B.a = flat;
            IntMatrix GB = G * B;
            IntMatrix Gp = B.transpose() * GB;
            for (auto& x : Gp.a)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), l2E.get_mpz_t());
            auto [s, eps] = mod_l_type(Gp, l);
            counts[{v, s, eps}] += 1;

            for (const auto& c : lines) {
                std::vector<Integer> w(r, 0);
                bool integral = true;
                for (int i = 0; i < r && integral; ++i) {
                    for (int j = 0; j < r; ++j)
                        w[i] += B(i, j) * c[j];
                    if (!mpz_divisible_p(w[i].get_mpz_t(), L.get_mpz_t()))
                        integral = false;
                    else
                        w[i] /= L;
                }
                if (!integral)
                    continue;
                // w must pair integrally with itself and with the basis.
                std::vector<Integer> Gw(r, 0);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        Gw[i] += G(i, j) * w[j];
                Integer ww = 0;
                for (int i = 0; i < r; ++i)
                    ww += w[i] * Gw[i];
                bool ok = mpz_divisible_p(ww.get_mpz_t(), l2E.get_mpz_t());
                for (int j = 0; j < r && ok; ++j) {
                    Integer x = 0;
                    for (int i = 0; i < r; ++i)
                        x += B(i, j) * Gw[i];
                    ok = mpz_divisible_p(x.get_mpz_t(), l2E.get_mpz_t());
                }
                if (!ok)
                    continue;
                IntMatrix gens(r, r + 1);
                for (int i = 0; i < r; ++i) {
                    for (int j = 0; j < r; ++j)
                        gens(i, j) = B(i, j);
                    gens(i, r) = w[i];
                }
                next.insert(lattice_hnf(std::move(gens)).a);
            }
        }
        level = std::move(next);
    }

    // F(l^{-k}) at enough k, then interpolate in X = l^{-k}.
    const int d = inv.degree;
    const int npts = d + 3;
    auto [num, den] = b_cofactor(r, l, inv.chi);
    std::vector<Rational> xs, ys;
    for (int k = r + 1; k < r + 1 + npts; ++k) {
        const Rational X = rpow(l, -k);
        const Integer o_total = ortho_order(2 * k, 1, l);
        Rational b = 0;
        for (const auto& [key, cnt] : counts) {
            auto [v, s, eps] = key;
            const int t = r - s;
            const int dimW = 2 * k - s;
            Rational term = rpow(l, (r + 1 - 2 * k) * v + r * (r + 1) / 2 - 2 * k * r);
            term *= make_rational(o_total, ortho_order(dimW, eps, l));
            for (int j = 0; j < t; ++j)
                term *= Rational(ipow(l, static_cast<unsigned>(j)) * isotropic_count(dimW - 2 * j, eps, l));
            b += Rational(cnt) * term;
        }
        xs.push_back(X);
        ys.push_back(b * to_qpoly(num).eval(X) / to_qpoly(den).eval(X));
    }
    QPoly Fq = newton_interpolate(xs, ys);
    if (Fq.degree() > d)
        throw consistency_error("f_poly_density: interpolated F has degree " + std::to_string(Fq.degree()) +
                                ", expected at most " + std::to_string(d) + " for T = [" + T.to_string() + "]");
    out.F = to_zpoly(Fq, "f_poly_density");
    if (out.F[0] != 1)
        throw consistency_error("f_poly_density: F(0) != 1");
    return out;
}

// ---------------------------------------------------------------- dispatch

LocalPolynomial f_poly(const HalfIntegralMatrix& T, std::int64_t l)
{
    static std::mutex mu;
    static std::map<std::pair<std::vector<std::int64_t>, std::int64_t>, LocalPolynomial> cache;
    require_nondegenerate(T, "f_poly");
    const auto key = std::make_pair(T.gram2(), l);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    LocalPolynomial F;
    const int r = T.degree();
    if (r <= 1) {
        F = f_poly_closed(T, l);
    } else if (r == 2) {
        F = f_poly_closed(T, l);
        if (l == 2) {
            try {
                LocalPolynomial o = f_poly_oracle(T, l);
                if (o.F == F.F)
                    F.oracle_verified = true;
                else
                    F = o;
            } catch (const bound_error&) {
                // Out of oracle range: keep the unverified closed form.
            }
        }
    } else if (l != 2) {
        F = f_poly_density(T, l);
    } else {
        try {
            F = f_poly_oracle(T, l);
        } catch (const bound_error& e) {
            throw bound_error(std::string("local polynomial out of oracle range: ") + e.what());
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, F);
    return F;
}

// ------------------------------------------------------------ identities

CheckResult functional_equation_check(const HalfIntegralMatrix& T, const ZPoly& F, std::int64_t l, int hasse)
{
    const LocalInvariants inv = invariants_of(T, l);
    const int r = inv.r;
    const QPoly Fq = to_qpoly(F);
    Laurent lhs = Laurent::reflect(Fq, rpow(l, -r - 1));
    Laurent rhs;
    if (r % 2 == 0) {
        const int v = valuation(inv.f, l);
        rhs = Laurent::from(Fq, -2 * v).scaled(rpow(l, -(r + 1) * v));
    } else {
        const int v = valuation(inv.D, l);
        int eta = hasse * hilbert_symbol(inv.det, ((r - 1) / 2) % 2 == 0 ? inv.det : Rational(-inv.det), l);
        if (((r * r - 1) / 8) % 2 == 1)
            eta *= hilbert_symbol(-1, -1, l);
        rhs = Laurent::from(Fq, -v).scaled(eta * rpow(l, -(r + 1) / 2 * v));
    }
    CheckResult res;
    res.ok = lhs == rhs;
    if (!res.ok)
        res.diagnostic = "T = [" + T.to_string() + "], l = " + std::to_string(l) + ": F(l^{-r-1}/X) = " +
                         lhs.to_string() + " but expected " + rhs.to_string();
    return res;
}

CheckResult functional_equation_check(const HalfIntegralMatrix& T, std::int64_t l)
{
    return functional_equation_check(T, f_poly(T, l).F, l, invariants_of(T, l).hasse);
}

ZPoly s_poly_sum(const HalfIntegralMatrix& T, std::int64_t p)
{
    require_nondegenerate(T, "s_poly_sum");
    const int r = T.degree();
    if (r == 0)
        return ZPoly::constant(1);
    // e[m] = s_m of the monomials p^{j(2r-j+1)/2} X^j.
    auto c = stab_R_coefficients(r, p);
    std::vector<ZPoly> e(r + 1);
    e[0] = ZPoly::constant(1);
    for (int j = 1; j <= r; ++j) {
        ZPoly a = ZPoly::monomial(c[j - 1], static_cast<unsigned>(j));
        for (int m = j; m >= 1; --m)
            e[m] = e[m] + a * e[m - 1];
    }
    ZPoly sum;
    for (int m = 0; m <= r; ++m) {
        ZPoly Fm = f_poly(T.scaled(ipow64(p, r - m)), p).F;
        ZPoly term = e[m] * Fm;
        sum = (m % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
}

ZPoly s_poly_closed(const HalfIntegralMatrix& T, std::int64_t p)
{
    require_nondegenerate(T, "s_poly_closed");
    const int r = T.degree();
    if (r == 0)
        return ZPoly::constant(1);
    ZPoly num = stab_R1(r, p);
    if (r % 2 == 0) {
        const Rational x = (r / 2) % 2 == 0 ? T.det() : Rational(-T.det());
        num = num * ZPoly({Integer(1), Integer(-chi_local(x, p) * ipow(p, static_cast<unsigned>(r / 2)))});
    }
    return exact_divide(num, stab_P1(r, p), "s_poly_closed");
}

CheckResult katsurada_recursion_check(const HalfIntegralMatrix& T1, const HalfIntegralMatrix& T2, std::int64_t p)
{
    if (T1.degree() != 2)
        throw domain_error("katsurada_recursion_check: T1 must have degree 2");
    if (p == 2)
        throw domain_error("katsurada_recursion_check: p must be odd");
    const HalfIntegralMatrix T = T1.direct_sum(T2);
    require_nondegenerate(T, "katsurada_recursion_check");
    const int r = T.degree();
    const ZPoly S = s_poly_sum(T, p);
    const ZPoly S2 = s_poly_sum(T2, p).scale_var(ipow(p, 2));
    ZPoly common = ZPoly({Integer(1)}) - ZPoly::monomial(ipow(p, static_cast<unsigned>((r - 1) * (r + 2) / 2)), static_cast<unsigned>(r - 1));
    common = common * (ZPoly({Integer(1)}) - ZPoly::monomial(ipow(p, static_cast<unsigned>(r * (r + 1) / 2)), static_cast<unsigned>(r)));
    ZPoly lhs, rhs;
    if (r % 2 == 0) {
        const int h = r / 2;
        const Rational xT = h % 2 == 0 ? T.det() : Rational(-T.det());
        const Rational x2 = (h - 1) % 2 == 0 ? T2.det() : Rational(-T2.det());
        const int chiT = chi_local(xT, p);
        const int chi2 = (T2.degree() == 0) ? 1 : chi_local(x2, p);
        ZPoly fT({Integer(1), Integer(-chiT * ipow(p, static_cast<unsigned>(h)))});
        ZPoly f2({Integer(1), Integer(-chi2 * ipow(p, static_cast<unsigned>(h + 1)))});
        ZPoly q = ZPoly({Integer(1)}) - ZPoly::monomial(ipow(p, static_cast<unsigned>(r + 1)), 2);
        lhs = S * f2 * q;
        rhs = S2 * fT * common;
    } else {
        ZPoly q = ZPoly({Integer(1)}) - ZPoly::monomial(ipow(p, static_cast<unsigned>(r + 2)), 2);
        lhs = S * q;
        rhs = S2 * common;
    }
    CheckResult res;
    res.ok = lhs == rhs;
    if (!res.ok)
        res.diagnostic = "T1 = [" + T1.to_string() + "], T2 = [" + T2.to_string() + "], p = " + std::to_string(p) +
                         ": S_p(T) = " + S.to_string() + ", S_p(T2; p^2 X) = " + S2.to_string();
    return res;
}

} // namespace siegel
