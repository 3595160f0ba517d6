#include "verify.hpp"

#include "siegel/arith.hpp"
#include "siegel/eisenstein.hpp"
#include "siegel/errors.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lambda.hpp"
#include "siegel/quadform.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace siegel::app {

namespace {

using Clock = std::chrono::steady_clock;

CheckLine timed(const std::string& name, const std::function<std::string(bool&)>& body)
{
    CheckLine line;
    line.name = name;
    const auto t0 = Clock::now();
    try {
        bool ok = true;
        line.detail = body(ok);
        line.pass = ok;
    } catch (const std::exception& e) {
        line.pass = false;
        line.detail = std::string("exception: ") + e.what();
    }
    line.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return line;
}

// Positive definite T of degree 1 and 2 whose l-adic discriminant valuation
// is at most vmax. Trace bounds 40 and 14 already meet every Z_l-class that
// occurs for vmax <= 3 and l <= 5.
std::vector<HalfIntegralMatrix> local_sample(std::int64_t l, int vmax)
{
    std::vector<HalfIntegralMatrix> out;
    for (int deg = 1; deg <= 2; ++deg)
        for (const auto& T : enumerate_psd(deg, deg == 1 ? 40 : 14)) {
            if (!T.is_positive_definite())
                continue;
            if (valuation(invariants_of(T, l).D, l) > vmax)
                continue;
            out.push_back(T);
        }
    return out;
}

void local_suite(std::vector<CheckLine>& out)
{
    int cases = 0, closed_bad = 0, fe_bad = 0, deg_bad = 0;
    std::string first;
    out.push_back(timed("local: oracle = closed form, rank <= 2, v_l(D) <= 3, l in {2,3,5}", [&](bool& ok) {
        for (std::int64_t l : {2, 3, 5})
            for (const auto& T : local_sample(l, 3)) {
                ++cases;
                const auto inv = invariants_of(T, l);
                const ZPoly o = f_poly_oracle(T, l).F;
                if (!(o == f_poly_closed(T, l).F)) {
                    ++closed_bad;
                    if (first.empty())
                        first = T.to_string() + " at l=" + std::to_string(l);
                }
                if (!functional_equation_check(T, o, l, inv.hasse).ok)
                    ++fe_bad;
                if (o.degree() != inv.degree)
                    ++deg_bad;
            }
        ok = closed_bad == 0;
        return std::to_string(cases) + " cases, " + std::to_string(closed_bad) + " mismatches" +
               (first.empty() ? "" : " (first " + first + ")");
    }));
    out.push_back(timed("local: functional equation on the same set", [&](bool& ok) {
        ok = fe_bad == 0 && cases > 0;
        return std::to_string(fe_bad) + " failures";
    }));
    out.push_back(timed("local: degree law deg F_l = 2 v_l(f) or v_l(D)", [&](bool& ok) {
        ok = deg_bad == 0 && cases > 0;
        return std::to_string(deg_bad) + " failures";
    }));
    out.push_back(timed("local: stabilization sum = closed form", [&](bool& ok) {
        const char* mats[] = {"2", "6", "2,1;1,2", "2,0;0,4", "2,1,0;1,2,0;0,0,2"};
        int n = 0;
        for (std::int64_t p : {3, 5})
            for (const char* m : mats) {
                const std::string s = m;
                const auto T = HalfIntegralMatrix::parse(s);
                ++n;
                if (!(s_poly_sum(T, p) == s_poly_closed(T, p))) {
                    ok = false;
                    return "mismatch at " + s + " p=" + std::to_string(p);
                }
            }
        return std::to_string(n) + " instances";
    }));
    out.push_back(timed("local: block recursion, rank 3", [&](bool& ok) {
        const auto r = katsurada_recursion_check(HalfIntegralMatrix::parse("2,1;1,2"),
                                                 HalfIntegralMatrix::parse("2"), 3);
        ok = r.ok;
        return r.diagnostic;
    }));
}

void stab_suite(std::vector<CheckLine>& out, int jobs)
{
    for (int n : {1, 2})
        for (std::int64_t p : {5, 7})
            for (int kappa : {6, 8}) {
                const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                        " k=" + std::to_string(kappa);
                out.push_back(timed("stab: operator = Q*-path = closed form, " + tag, [&](bool& ok) {
                    const auto spec = EisensteinSpec::make(n, kappa);
                    const auto closed = stabilized_expansion(n, kappa, p, 3, jobs);
                    const auto src = eisenstein_expansion_orbit(spec, p, 3, q_star_depth(n), jobs);
                    const bool op = stabilize_via_operator(n, kappa, p, src) == closed;
                    const bool qs = stabilize_via_q_star(n, kappa, p, src) == closed;
                    bool semi = true;
                    for (const auto& T : closed.keys())
                        semi = semi && stabilized_coeff(n, kappa, p, T.scaled(p)) == closed.at(T);
                    ok = op && qs && semi;
                    return std::to_string(closed.size()) + " matrices; operator " + (op ? "ok" : "FAIL") +
                           ", Q* " + (qs ? "ok" : "FAIL") + ", A_pT = A_T " + (semi ? "ok" : "FAIL");
                }));
            }
    out.push_back(timed("stab: GL_2(Z) invariance of coefficients", [&](bool& ok) {
        const auto spec = EisensteinSpec::make(2, 6);
        IntMatrix U(2, 2);
        U(0, 0) = 2;
        U(0, 1) = 1;
        U(1, 0) = 1;
        U(1, 1) = 1;
        int n = 0;
        for (const auto& T : enumerate_psd(2, 3)) {
            ++n;
            const auto S = T.transform(U);
            if (fourier_coeff(spec, S) != fourier_coeff(spec, T) ||
                stabilized_coeff(2, 6, 5, S) != stabilized_coeff(2, 6, 5, T)) {
                ok = false;
                return "differs at " + T.to_string();
            }
        }
        return std::to_string(n) + " matrices";
    }));
}

void satake_suite(std::vector<CheckLine>& out)
{
    out.push_back(timed("satake: similitude normalization, n <= 4, k <= 12, l in {2,3,5}", [&](bool& ok) {
        int n_checked = 0;
        for (int n = 1; n <= 4; ++n)
            for (int k = n + 2; k <= 12; ++k)
                for (std::int64_t l : {2, 3, 5}) {
                    ++n_checked;
                    if (satake_params(n, k, l).similitude_exponent() != expected_similitude_exponent(n, k))
                        ok = false;
                }
        return std::to_string(n_checked) + " parameter sets";
    }));
    out.push_back(timed("satake: factors 1 - l^e Y with e >= 0", [&](bool& ok) {
        for (int n = 1; n <= 4; ++n)
            for (int k = n + 2; k <= 12; ++k)
                for (auto e : hecke_polynomial(satake_params(n, k, 3)).factor_exponents)
                    if (e < 0)
                        ok = false;
        return std::string("n <= 4, k <= 12");
    }));
    out.push_back(timed("satake: Zharkovskaya identity for odd n", [&](bool& ok) {
        for (int n : {3})
            for (int k = n + 2; k <= 12; ++k)
                for (std::int64_t l : {2, 3, 5})
                    ok = ok && zharkovskaya_check(n, k, l);
        return std::string("n = 3, k <= 12, l in {2,3,5}");
    }));
    out.push_back(timed("satake: R(p^{k-n-1}, Y) divides Q*(Y), n <= 4, even k <= 12, p <= 7", [&](bool& ok) {
        int n_checked = 0;
        for (int n = 1; n <= 4; ++n)
            for (int k = n + 2; k <= 12; ++k) {
                if (k % 2)
                    continue;
                for (std::int64_t p : {2, 3, 5, 7}) {
                    ++n_checked;
                    ok = ok && divisibility_check(n, k, p).divides;
                }
            }
        return std::to_string(n_checked) + " cases";
    }));
}

void lambda_suite(std::vector<CheckLine>& out, const VerifyOptions& opt)
{
    LambdaConfig cfg;
    cfg.M = opt.M;
    cfg.N = opt.N;
    const std::int64_t p = opt.p;
    const int a = opt.a;
    const int M_eff = std::min(cfg.M, cfg.N);
    const std::string tag = "p=" + std::to_string(p) + " a=" + std::to_string(a);
    out.push_back(timed("lambda: branch held-out certificates, " + tag, [&](bool& ok) {
        std::ostringstream s;
        for (int i = 0; i <= 1; ++i) {
            auto b = branch(Integer(1), 2 * a - 2 * i, p, cfg);
            s << b->chi.describe() << ":" << b->held_out_valuation << " ";
            ok = ok && (b->vanishes || b->held_out_valuation >= M_eff);
        }
        auto b = branch(Integer(-3), a - 1, p, cfg);
        s << b->chi.describe() << ":" << b->held_out_valuation;
        ok = ok && (b->vanishes || b->held_out_valuation >= M_eff);
        return s.str();
    }));
    for (int n : {1, 2}) {
        out.push_back(timed("lambda: specialization = stabilized coefficient, n=" + std::to_string(n) + " " + tag,
                            [&](bool& ok) {
                                if (a % 2) {
                                    return std::string("odd a: no classical weight in this class");
                                }
                                int worst = cfg.M, count = 0;
                                std::vector<int> weights;
                                for (int k = a; static_cast<int>(weights.size()) < 2; k += static_cast<int>(p - 1))
                                    if (k > n + 1)
                                        weights.push_back(k);
                                for (const auto& T : enumerate_psd(n, 2)) {
                                    const auto f = a_T_lambda(n, a, T, p, cfg);
                                    for (int k : weights) {
                                        worst = std::min(worst, agreement(specialize(f, n, p, k),
                                                                          stabilized_coeff(n, k, p, T)));
                                        ++count;
                                    }
                                }
                                ok = worst >= M_eff - cfg.delta;
                                return std::to_string(count) + " specializations, worst agreement " +
                                       std::to_string(worst);
                            }));
        out.push_back(timed("lambda: cleared expansion is integral, n=" + std::to_string(n) + " " + tag,
                            [&](bool& ok) {
                                const auto e = lambda_eisenstein(n, a, p, 2, cfg, opt.jobs);
                                for (const auto& T : e.keys())
                                    ok = ok && e.at(T).min_valuation() >= 0;
                                ok = ok && b_poly(n, p).forms_agree;
                                return std::to_string(e.size()) + " coefficients";
                            }));
    }
}

} // namespace

std::vector<CheckLine> run_suite(const std::string& suite, const VerifyOptions& opt)
{
    std::vector<CheckLine> out;
    const bool all = suite == "all";
    if (!all && suite != "local" && suite != "stab" && suite != "satake" && suite != "lambda")
        throw domain_error("unknown suite '" + suite + "' (expected local, stab, satake, lambda or all)");
    if (all || suite == "local")
        local_suite(out);
    if (all || suite == "stab")
        stab_suite(out, opt.jobs);
    if (all || suite == "satake")
        satake_suite(out);
    if (all || suite == "lambda")
        lambda_suite(out, opt);
    return out;
}

} // namespace siegel::app
