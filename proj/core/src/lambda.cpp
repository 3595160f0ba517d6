#include "siegel/lambda.hpp"

#include "siegel/arith.hpp"
#include "siegel/errors.hpp"
#include "siegel/parallel.hpp"
#include "siegel/quadform.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace siegel {

namespace {

Integer reduce_mod(const Integer& v, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

void require_odd_prime(std::int64_t p, const char* what)
{
    if (p < 3 || !is_prime(p))
        throw domain_error(std::string(what) + ": p must be an odd prime, got " + std::to_string(p));
}

void require_compatible(const LambdaElement& a, const LambdaElement& b)
{
    if (a.prime() != b.prime() || a.x_precision() != b.x_precision())
        throw domain_error("LambdaElement: operands over different rings");
}

int vp_factorial(int k, std::int64_t p)
{
    int v = 0;
    for (std::int64_t q = p; q <= k; q *= p)
        v += static_cast<int>(k / q);
    return v;
}

} // namespace

LambdaElement::LambdaElement(std::int64_t p, int M, int N, int M_eff, std::vector<Integer> coeffs)
    : p_(p), M_(M), N_(N), M_eff_(std::min(M_eff, M)), c_(std::move(coeffs))
{
    if (M < 1 || N < 1)
        throw domain_error("LambdaElement: precisions must be positive");
    c_.resize(static_cast<std::size_t>(N), Integer(0));
    const Integer m = ipow(p, static_cast<unsigned>(M));
    for (auto& x : c_)
        x = reduce_mod(x, m);
}

LambdaElement LambdaElement::zero(std::int64_t p, int M, int N)
{
    return LambdaElement(p, M, N, std::min(M, N), {});
}

LambdaElement LambdaElement::constant(std::int64_t p, int M, int N, const Rational& c)
{
    return constant(PadicInt::from_rational(p, M, c), N);
}

LambdaElement LambdaElement::constant(const PadicInt& c, int N)
{
    return LambdaElement(c.prime(), c.precision(), N, std::min(c.precision(), N), {c.value()});
}

LambdaElement LambdaElement::from_qpoly(const QPoly& f, std::int64_t p, int M, int N)
{
    std::vector<Integer> c;
    for (int t = 0; t < N && t <= f.degree(); ++t) {
        const Rational& q = f.coeffs()[static_cast<std::size_t>(t)];
        if (q != 0 && valuation(q, p) < 0)
            throw consistency_error("denominator not cleared: coefficient " + siegel::to_string(q) +
                                    " is not p-integral");
        c.push_back(PadicInt::from_rational(p, M, q).value());
    }
    return LambdaElement(p, M, N, std::min(M, N), std::move(c));
}

bool LambdaElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
}

int LambdaElement::min_valuation() const
{
    int v = M_;
    for (const auto& x : c_)
        if (x != 0)
            v = std::min(v, valuation(x, p_));
    return v;
}

LambdaElement LambdaElement::with_certificate(int M_eff) const
{
    LambdaElement r = *this;
    r.M_eff_ = std::min(M_eff, M_eff_);
    return r;
}

PadicNumber LambdaElement::eval(const PadicNumber& x) const
{
    if (!x.is_zero() && x.valuation() < 1)
        throw domain_error("LambdaElement::eval: point must lie in pZ_p");
    PadicNumber acc = PadicNumber::zero(p_, M_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + PadicNumber::from_padic_int(PadicInt(p_, M_, *it));
    return acc.with_abs_precision(M_eff_);
}

PadicNumber LambdaElement::eval(const Rational& x) const
{
    return eval(PadicNumber::from_rational(p_, x, M_ + 2));
}

LambdaElement LambdaElement::operator-() const
{
    std::vector<Integer> c = c_;
    for (auto& x : c)
        x = -x;
    return LambdaElement(p_, M_, N_, M_eff_, std::move(c));
}

LambdaElement operator+(const LambdaElement& a, const LambdaElement& b)
{
    require_compatible(a, b);
    std::vector<Integer> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.c_[i] + b.c_[i];
    return LambdaElement(a.p_, std::min(a.M_, b.M_), a.N_, std::min(a.M_eff_, b.M_eff_), std::move(c));
}

LambdaElement operator-(const LambdaElement& a, const LambdaElement& b) { return a + (-b); }

LambdaElement operator*(const LambdaElement& a, const LambdaElement& b)
{
    require_compatible(a, b);
    const std::size_t N = a.c_.size();
    std::vector<Integer> c(N, Integer(0));
    for (std::size_t i = 0; i < N; ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < N; ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    }
    return LambdaElement(a.p_, std::min(a.M_, b.M_), a.N_, std::min(a.M_eff_, b.M_eff_), std::move(c));
}

bool operator==(const LambdaElement& a, const LambdaElement& b)
{
    return a.p_ == b.p_ && a.M_ == b.M_ && a.N_ == b.N_ && a.c_ == b.c_;
}

std::string LambdaElement::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += c_[i].get_str();
        if (i > 0)
            s += "*X" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    if (s.empty())
        s = "0";
    return s + " + O(" + std::to_string(p_) + "^" + std::to_string(M_) + ", X^" +
           std::to_string(N_) + ")";
}

BPolynomial b_poly(int n, std::int64_t p)
{
    require_odd_prime(p, "b_poly");
    if (n < 1)
        throw domain_error("b_poly: genus must be positive");
    BPolynomial B;
    B.n = n;
    B.p = p;
    const int h = n / 2;
    auto c = [&](int j) { return rpow(Rational(1 + p), -j); };
    for (int j = 0; j <= h; ++j) {
        B.factors.push_back(QPoly({c(j) - 1, c(j)}));
        B.names.push_back("lin_" + std::to_string(j));
    }
    for (int i = 1; i <= h; ++i) {
        const Rational ci = c(2 * i);
        B.factors.push_back(QPoly({ci - 1, 2 * ci, ci}));
        B.names.push_back("sq_" + std::to_string(i));
    }
    B.product = QPoly::constant(1);
    for (const auto& f : B.factors)
        B.product = B.product * f;
    QPoly second = QPoly::monomial(Rational(1), 1);
    for (int i = 1; i <= h; ++i) {
        const QPoly lin({c(i) - 1, c(i)});
        const QPoly plus({c(i) + 1, c(i)});
        second = second * lin * lin * plus;
    }
    B.forms_agree = (second == B.product);
    return B;
}

LambdaElement BPolynomial::as_lambda(int M, int N) const { return LambdaElement::from_qpoly(product, p, M, N); }

PadicNumber FracLambda::eval(const Rational& x, const BPolynomial& B) const
{
    PadicNumber v = num.eval(x);
    const int big = num.precision() + 64;
    for (int i : den_atoms)
        v = v / PadicNumber::from_rational(num.prime(), B.factors.at(static_cast<std::size_t>(i)).eval(x), big);
    return v;
}

LambdaElement FracLambda::cleared(const BPolynomial& B) const
{
    std::vector<int> count(B.factors.size(), 0);
    for (int i : den_atoms) {
        if (i < 0 || i >= static_cast<int>(B.factors.size()) || ++count[static_cast<std::size_t>(i)] > 1)
            throw consistency_error("denominator not cleared: pole " + std::to_string(i) +
                                    " is not among the factors of B");
    }
    LambdaElement r = num;
    for (std::size_t i = 0; i < B.factors.size(); ++i)
        if (count[i] == 0)
            r = r * LambdaElement::from_qpoly(B.factors[i], num.prime(), num.precision(), num.x_precision());
    return r;
}

namespace {

Integer node_point(std::int64_t p, int k) { return ipow(1 + p, static_cast<unsigned>(k)) - 1; }

Rational raw_target(const CharacterSpec& chi, std::int64_t p, int k)
{
    return dirichlet_L_neg(static_cast<unsigned>(k), CharacterSpec::kronecker(chi.disc()), p);
}

} // namespace

BranchSeries build_branch(const CharacterSpec& chi_in, std::int64_t p, const LambdaConfig& cfg)
{
    require_odd_prime(p, "build_branch");
    if (cfg.M < 1 || cfg.N < 1 || cfg.G < 0)
        throw domain_error("build_branch: bad precision configuration");
    BranchSeries s;
    s.chi = CharacterSpec::product(chi_in.disc(), chi_in.omega_exponent(), p);
    s.p = p;
    const int M_eff = std::min(cfg.M, cfg.N);
    if (s.chi.parity() == -1) {
        s.vanishes = true;
        s.phi = LambdaElement::zero(p, cfg.M, cfg.N);
        return s;
    }
    s.trivial_branch = s.chi.is_trivial();
    int k = static_cast<int>(s.chi.omega_exponent());
    while (k < 2)
        k += static_cast<int>(p - 1);
    const int D = cfg.M + cfg.N - 1 + cfg.G;
    std::vector<Rational> xs, ys;
    for (int j = 0; j < D + 2; ++j, k += static_cast<int>(p - 1)) {
        if (j >= D) {
            s.held_out.push_back(k);
            continue;
        }
        s.nodes.push_back(k);
        const Integer x = node_point(p, k);
        Rational y = raw_target(s.chi, p, k);
        if (s.trivial_branch)
            y *= x;
        xs.emplace_back(x);
        ys.push_back(y);
    }
    const QPoly P = newton_interpolate(xs, ys);
    for (const auto& c : P.coeffs()) {
        if (c != 0 && valuation(c, p) < 0)
            throw consistency_error("build_branch: p divides an interpolation denominator for " +
                                    s.chi.describe());
        s.full.push_back(PadicInt::from_rational(p, cfg.M, c).value());
    }
    s.phi = LambdaElement(p, cfg.M, cfg.N, M_eff,
                          std::vector<Integer>(s.full.begin(),
                                               s.full.begin() + std::min<std::ptrdiff_t>(cfg.N, static_cast<std::ptrdiff_t>(s.full.size()))));
    s.held_out_valuation = cfg.M;
    for (int kh : s.held_out) {
        Rational want = branch_target(s, kh);
        if (s.trivial_branch)
            want *= node_point(p, kh);
        const int agree = agreement(branch_phi_at(s, kh), want);
        s.held_out_valuation = std::min(s.held_out_valuation, agree);
        if (agree < M_eff)
            throw consistency_error("build_branch: certification failed for " + s.chi.describe() +
                                    " at k = " + std::to_string(kh) + ": agreement " +
                                    std::to_string(agree) + " < " + std::to_string(M_eff));
    }
    return s;
}

std::shared_ptr<const BranchSeries> branch(const Integer& d, std::int64_t b, std::int64_t p,
                                           const LambdaConfig& cfg)
{
    using Key = std::tuple<std::string, std::int64_t, std::int64_t, int, int, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const BranchSeries>> cache;
    const CharacterSpec chi = CharacterSpec::product(d, b, p);
    const Key key{chi.disc().get_str(), chi.omega_exponent(), p, cfg.M, cfg.N, cfg.G};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto s = std::make_shared<const BranchSeries>(build_branch(chi, p, cfg));
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(s)).first->second;
}

Rational branch_target(const BranchSeries& s, int k)
{
    if (s.vanishes)
        return 0;
    const std::int64_t m = s.p - 1;
    if (((k - s.chi.omega_exponent()) % m + m) % m != 0)
        throw domain_error("branch_target: weight " + std::to_string(k) +
                           " is off the rational residue class");
    return raw_target(s.chi, s.p, k);
}

PadicNumber branch_phi_at(const BranchSeries& s, int k)
{
    return s.phi.eval(Rational(node_point(s.p, k)));
}

namespace {

LambdaElement horner(const std::vector<Integer>& coeffs, const LambdaElement& U, int M_eff)
{
    LambdaElement acc = LambdaElement::zero(U.prime(), U.precision(), U.x_precision());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * U + LambdaElement::constant(PadicInt(U.prime(), U.precision(), *it), U.x_precision());
    return acc.with_certificate(M_eff);
}

LambdaElement embed_argument(const QPoly& u, std::int64_t p, int M, int N)
{
    if (u[0] != 0 && valuation(u[0], p) < 1)
        throw domain_error("compose: u(0) = " + siegel::to_string(u[0]) + " is not in pZ_p");
    return LambdaElement::from_qpoly(u, p, M, N);
}

} // namespace

LambdaElement compose(const BranchSeries& f, const QPoly& u, const LambdaConfig& cfg)
{
    const LambdaElement U = embed_argument(u, f.p, cfg.M, cfg.N);
    if (f.vanishes)
        return LambdaElement::zero(f.p, cfg.M, cfg.N);
    return horner(f.full, U, f.phi.certified());
}

LambdaElement compose(const LambdaElement& f, const QPoly& u)
{
    const LambdaElement U = embed_argument(u, f.prime(), f.precision(), f.x_precision());
    return horner(f.coeffs(), U, f.certified());
}

LambdaElement one_plus_X_pow(const PadicInt& s, int M, int N)
{
    const std::int64_t p = s.prime();
    const int W = s.precision();
    if (W - vp_factorial(N - 1, p) < M)
        throw domain_error("one_plus_X_pow: exponent known only mod p^" + std::to_string(W) +
                           ", need " + std::to_string(M + vp_factorial(N - 1, p)));
    const Integer mW = ipow(p, static_cast<unsigned>(W));
    const Integer mM = ipow(p, static_cast<unsigned>(M));
    std::vector<Integer> c;
    Integer num = 1;   // s (s-1) ... (s-k+1) mod p^W
    Integer fact = 1;  // k!
    for (int k = 0; k < N; ++k) {
        if (k > 0) {
            num = reduce_mod(num * (s.value() - (k - 1)), mW);
            fact *= k;
        }
        const int v = vp_factorial(k, p);
        const Integer pv = ipow(p, static_cast<unsigned>(v));
        if (!mpz_divisible_p(num.get_mpz_t(), pv.get_mpz_t()))
            throw consistency_error("one_plus_X_pow: binomial coefficient is not p-integral");
        Integer q = num / pv;
        Integer u = fact / pv, inv;
        mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mM.get_mpz_t());
        c.push_back(reduce_mod(q * inv, mM));
    }
    return LambdaElement(p, M, N, std::min(M, N), std::move(c));
}

FracLambda a_T_lambda(int n, int a, const HalfIntegralMatrix& T, std::int64_t p,
                      const LambdaConfig& cfg)
{
    require_odd_prime(p, "a_T_lambda");
    if (a < 0 || a >= p - 1)
        throw domain_error("a_T_lambda: branch index a must satisfy 0 <= a < p-1");
    const CoefficientData c = coefficient_data(n, T);
    const int r = c.r;
    const BPolynomial B = b_poly(n, p);
    FracLambda out;
    out.num = LambdaElement::constant(p, cfg.M, cfg.N, rpow(2, (r + 1) / 2 - (n + 1) / 2));
    for (int i = r / 2 + 1; i <= n / 2; ++i) {
        auto br = branch(Integer(1), 2 * a - 2 * i, p, cfg);
        out.num = out.num * compose(*br, B.factors[static_cast<std::size_t>(B.sq_index(i))], cfg);
        if (br->trivial_branch)
            out.den_atoms.push_back(B.sq_index(i));
    }
    if (r % 2 == 0) {
        auto br = branch(c.d, a - r / 2, p, cfg);
        out.num = out.num * compose(*br, B.factors[static_cast<std::size_t>(B.lin_index(r / 2))], cfg);
        if (br->trivial_branch)
            out.den_atoms.push_back(B.lin_index(r / 2));
    }
    const int W = cfg.M + vp_factorial(cfg.N - 1, p) + 2;
    for (auto l : c.primes) {
        if (l == p)
            continue;
        const Integer L = static_cast<long>(l);
        const PadicInt w = teichmuller(L, p, W);
        const PadicInt bracket = PadicInt(p, W, L) * w.inverse();
        const LambdaElement power = one_plus_X_pow(s_of(bracket), cfg.M, cfg.N);
        const PadicInt scalar = teichmuller(L, p, cfg.M).pow(Integer(a)) *
                                PadicInt::from_rational(p, cfg.M, rpow(l, -r - 1));
        const LambdaElement arg = LambdaElement::constant(scalar, cfg.N) * power;
        const ZPoly F = f_poly(c.inner, l).F;
        LambdaElement acc = LambdaElement::zero(p, cfg.M, cfg.N);
        for (auto it = F.coeffs().rbegin(); it != F.coeffs().rend(); ++it)
            acc = acc * arg + LambdaElement::constant(p, cfg.M, cfg.N, Rational(*it));
        out.num = out.num * acc;
    }
    std::sort(out.den_atoms.begin(), out.den_atoms.end());
    return out;
}

PadicNumber specialize(const FracLambda& f, int n, std::int64_t p, int kappa, int epsilon_order)
{
    if (epsilon_order != 1)
        throw scope_error("specialization at a character eps of order " +
                          std::to_string(epsilon_order) +
                          " needs values in the ramified extension Q_p(zeta_{p^m}); only eps = 1 is supported");
    const BPolynomial B = b_poly(n, p);
    return f.eval(Rational(node_point(p, kappa)), B);
}

QExpansion<LambdaElement> lambda_eisenstein(int n, int a, std::int64_t p, std::int64_t trace_bound,
                                            const LambdaConfig& cfg, int jobs)
{
    if (trace_bound < 0 || trace_bound > 1000)
        throw bound_error("lambda_eisenstein: trace bound out of range");
    const auto keys = enumerate_psd(n, static_cast<int>(trace_bound));
    const BPolynomial B = b_poly(n, p);
    if (!B.forms_agree)
        throw consistency_error("b_poly: the two factorizations of B disagree");
    std::vector<LambdaElement> vals(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        vals[i] = a_T_lambda(n, a, keys[i], p, cfg).cleared(B);
        if (vals[i].min_valuation() < 0)
            throw consistency_error("denominator not cleared at " + keys[i].to_string());
    });
    QExpansion<LambdaElement> e(n, trace_bound,
                                "Ebar^(" + std::to_string(n) + ")(omega^" + std::to_string(a) +
                                    ")[p=" + std::to_string(p) + "]");
    for (std::size_t i = 0; i < keys.size(); ++i)
        e.insert(keys[i], std::move(vals[i]));
    return e;
}

} // namespace siegel
