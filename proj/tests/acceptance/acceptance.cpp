// Acceptance suite: one PASS/FAIL line per criterion. Exact criteria compare
// with ==; the p-adic ones use the valuation floors pinned below. Each
// criterion also has a wall-clock limit.

#include "oracles.hpp"

#include "siegel/eisenstein.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lambda.hpp"
#include "siegel/quadform.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace siegel;

namespace {

// Pinned tolerances.
constexpr int kP = 5;
constexpr int kM = 12;
constexpr int kN = 8;
constexpr int kMeff = kM < kN ? kM : kN;
constexpr int kHeldOutFloor = kMeff;      // branch certification
constexpr int kSpecFloor = kMeff - 2;     // specialization agreement

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= limit_s;
    const bool pass = o.pass && in_time;
    if (!pass)
        ++failures;
    std::printf("%s  %d. %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), s, limit_s, in_time ? "" : ", too slow");
    std::fflush(stdout);
}

HalfIntegralMatrix M(const char* s) { return HalfIntegralMatrix::parse(s); }

Outcome genus_one()
{
    Outcome o;
    const Rational expected_const[] = {make_rational(1, 240), make_rational(-1, 504), make_rational(1, 480)};
    int i = 0, n = 0;
    for (int k : {4, 6, 8}) {
        const auto e = eisenstein_expansion(EisensteinSpec::make(1, k), 50);
        const Rational c = oracle::zeta_neg(static_cast<unsigned>(k)) / 2;
        if (e.at(HalfIntegralMatrix::diagonal({0})) != expected_const[i] || expected_const[i] != c)
            o.pass = false;
        ++i;
        for (std::int64_t m = 1; m <= 50; ++m, ++n)
            if (e.at(HalfIntegralMatrix::diagonal({m})) != Rational(oracle::sigma(static_cast<unsigned>(k - 1), m)))
                o.pass = false;
    }
    o.detail = std::to_string(n) + " coefficients and 3 constant terms";
    return o;
}

Outcome ordinary_stabilization()
{
    Outcome o;
    int n = 0;
    for (std::int64_t p : {5, 7})
        for (int k : {4, 6}) {
            const auto e = stabilized_expansion(1, k, p, 50);
            Rational c = oracle::zeta_neg(static_cast<unsigned>(k)) *
                         (1 - Rational(ipow(p, static_cast<unsigned>(k - 1)))) / 2;
            c.canonicalize();
            if (e.at(HalfIntegralMatrix::diagonal({0})) != c)
                o.pass = false;
            for (std::int64_t m = 1; m <= 50; ++m, ++n)
                if (e.at(HalfIntegralMatrix::diagonal({m})) !=
                    Rational(oracle::sigma_prime_to(static_cast<unsigned>(k - 1), m, p)))
                    o.pass = false;
            if (e.at(HalfIntegralMatrix::diagonal({p})) != 1)
                o.pass = false;
        }
    o.detail = std::to_string(n) + " coefficients, A_p = 1 for 4 configurations";
    return o;
}

Outcome local_suite()
{
    Outcome o;
    int cases = 0, closed_bad = 0, fe_bad = 0, deg_bad = 0;
    for (std::int64_t l : {2, 3, 5})
        for (int r = 1; r <= 2; ++r)
            // Trace bounds 40 and 14 reach every Z_l-class with v_l(D) <= 3.
            for (const auto& T : enumerate_psd(r, r == 1 ? 40 : 14)) {
                if (!T.is_positive_definite())
                    continue;
                const auto inv = invariants_of(T, l);
                if (valuation(inv.D, l) > 3)
                    continue;
                ++cases;
                const auto F = f_poly_oracle(T, l).F;
                closed_bad += !(F == f_poly_closed(T, l).F);
                fe_bad += !functional_equation_check(T, F, l, inv.hasse).ok;
                deg_bad += F.degree() != inv.degree;
            }
    o.pass = cases > 0 && closed_bad == 0 && fe_bad == 0 && deg_bad == 0;
    o.detail = std::to_string(cases) + " (T, l) pairs; closed-form mismatches " + std::to_string(closed_bad) +
               ", functional-equation failures " + std::to_string(fe_bad) + ", degree-law failures " +
               std::to_string(deg_bad);
    return o;
}

Outcome dual_path()
{
    Outcome o;
    std::size_t genus2 = 0;
    int configs = 0;
    for (int n : {1, 2})
        for (std::int64_t p : {5, 7})
            for (int k : {6, 8}) {
                const auto closed = stabilized_expansion(n, k, p, 3);
                for (const auto& T : closed.keys())
                    if (closed.at(T) != stabilized_coeff(n, k, p, T))
                        o.pass = false;
                const auto src = eisenstein_expansion_orbit(EisensteinSpec::make(n, k), p, 3, q_star_depth(n));
                const auto op = stabilize_via_operator(n, k, p, src);
                const auto qs = stabilize_via_q_star(n, k, p, src);
                if (!(op == closed) || !(qs == closed))
                    o.pass = false;
                for (const auto& T : op.keys())
                    if (stabilized_coeff(n, k, p, T.scaled(p)) != op.at(T))
                        o.pass = false;
                if (n == 2)
                    genus2 = closed.size();
                ++configs;
            }
    if (genus2 < 8)
        o.pass = false;
    o.detail = std::to_string(configs) + " configurations, " + std::to_string(genus2) +
               " genus-2 matrices each; operator, Q* and A_pT = A_T checked";
    return o;
}

Outcome proof_identities()
{
    Outcome o;
    const char* mats[] = {"2", "6", "2,1;1,2", "2,0;0,4", "2,0;0,6", "2,1,0;1,2,0;0,0,2", "2,0,0;0,2,0;0,0,2"};
    int sums = 0;
    std::set<int> ranks;
    for (std::int64_t p : {3, 5})
        for (const char* s : mats) {
            const auto T = M(s);
            ++sums;
            ranks.insert(T.degree());
            if (!(s_poly_sum(T, p) == s_poly_closed(T, p))) {
                o.pass = false;
                o.detail += std::string("sum != closed at ") + s + " p=" + std::to_string(p) + "; ";
            }
        }
    struct Inst {
        const char* t1;
        const char* t2;
        std::int64_t p;
    };
    // Rank 4 uses p = 3: the density route at p = 5 is far slower.
    const Inst blocks[] = {{"2,1;1,2", "2", 3}, {"2,0;0,2", "6", 5}, {"2,1;1,2", "2,1;1,2", 3}, {"2,0;0,2", "2,1;1,2", 3}};
    int rec = 0;
    for (const auto& b : blocks) {
        const auto r = katsurada_recursion_check(M(b.t1), M(b.t2), b.p);
        ++rec;
        if (!r.ok) {
            o.pass = false;
            o.detail += std::string("recursion failed for ") + b.t1 + " + " + b.t2 + ": " + r.diagnostic + "; ";
        }
    }
    o.detail += std::to_string(sums) + " sum-vs-closed instances (ranks 1-3), " + std::to_string(rec) +
                " block recursions (ranks 3 and 4)";
    return o;
}

Outcome satake()
{
    Outcome o;
    int div = 0, zh = 0, sim = 0;
    for (int n = 1; n <= 4; ++n)
        for (int k = n + 2; k <= 12; ++k)
            for (std::int64_t p : {2, 3, 5, 7}) {
                ++sim;
                if (satake_params(n, k, p).similitude_exponent() != expected_similitude_exponent(n, k))
                    o.pass = false;
                if (k % 2 == 0) {
                    ++div;
                    if (!divisibility_check(n, k, p).divides)
                        o.pass = false;
                }
                if (n % 2 == 1 && n >= 3) {
                    ++zh;
                    if (!zharkovskaya_check(n, k, p))
                        o.pass = false;
                }
            }
    o.detail = std::to_string(div) + " divisibility cases, " + std::to_string(zh) + " Zharkovskaya cases, " +
               std::to_string(sim) + " similitude checks";
    return o;
}

LambdaConfig lambda_config()
{
    LambdaConfig cfg;
    cfg.M = kM;
    cfg.N = kN;
    return cfg;
}

// Every Kubota-Leopoldt branch a_T_lambda(n, a, T) reads for tr T <= bound.
std::set<std::pair<std::string, std::int64_t>> branches_used(int n, int a, std::int64_t bound)
{
    std::set<std::pair<std::string, std::int64_t>> out;
    const std::int64_t m = kP - 1;
    for (int i = 0; i <= n / 2; ++i)
        out.insert({"1", ((2 * a - 2 * i) % m + m) % m});
    for (const auto& T : enumerate_psd(n, static_cast<int>(bound))) {
        const auto d = coefficient_data(n, T);
        if (d.r % 2 == 0)
            out.insert({d.d.get_str(), ((a - d.r / 2) % m + m) % m});
    }
    return out;
}

Outcome lambda_interpolation()
{
    Outcome o;
    const auto cfg = lambda_config();
    int worst_held = kM, worst_spec = kM, specs = 0, branches = 0, entries = 0;
    for (int n : {1, 2})
        for (int a : {0, 2}) {
            for (const auto& [d, b] : branches_used(n, a, 2)) {
                const auto s = branch(Integer(d), b, kP, cfg);
                ++branches;
                if (!s->vanishes)
                    worst_held = std::min(worst_held, s->held_out_valuation);
            }
            std::vector<int> weights;
            for (int k = a; weights.size() < 2; k += kP - 1)
                if (k > n + 1)
                    weights.push_back(k);
            for (const auto& T : enumerate_psd(n, 2)) {
                const auto f = a_T_lambda(n, a, T, kP, cfg);
                for (int k : weights) {
                    worst_spec = std::min(worst_spec, agreement(specialize(f, n, kP, k), stabilized_coeff(n, k, kP, T)));
                    ++specs;
                }
            }
            const auto e = lambda_eisenstein(n, a, kP, 2, cfg);
            for (const auto& T : e.keys()) {
                ++entries;
                if (e.at(T).min_valuation() < 0)
                    o.pass = false;
            }
        }
    o.pass = o.pass && worst_held >= kHeldOutFloor && worst_spec >= kSpecFloor;
    o.detail = std::to_string(branches) + " branch checks (worst held-out valuation " + std::to_string(worst_held) +
               ", floor " + std::to_string(kHeldOutFloor) + "), " + std::to_string(specs) +
               " specializations (worst " + std::to_string(worst_spec) + ", floor " + std::to_string(kSpecFloor) +
               "), " + std::to_string(entries) + " integral B-cleared entries";
    return o;
}

Outcome cross_branch()
{
    Outcome o;
    const auto cfg = lambda_config();
    int worst = kM, count = 0;
    std::set<std::string> mats[3];
    for (int n : {1, 2})
        for (int a : {0, 2})
            for (int k : {5, 7}) {
                // a - k odd, so omega^{2a-2k} is nontrivial and chi = omega^{a-k}
                const std::int64_t m = kP - 1;
                const auto chi = CharacterSpec::teichmuller_power(((a - k) % m + m) % m, kP);
                const auto spec = EisensteinSpec::make(n, k, chi);
                // genus 1 needs trace 3 to reach four matrices
                for (const auto& T : enumerate_psd(n, n == 1 ? 3 : 2)) {
                    const auto v = specialize(a_T_lambda(n, a, T, kP, cfg), n, kP, k);
                    worst = std::min(worst, agreement(v, fourier_coeff_chi(spec, T, kM)));
                    mats[n].insert(T.to_string());
                    ++count;
                }
            }
    o.pass = worst >= kSpecFloor && mats[1].size() >= 4 && mats[2].size() >= 4;
    o.detail = std::to_string(count) + " comparisons over " + std::to_string(mats[1].size()) + " + " +
               std::to_string(mats[2].size()) + " matrices, worst agreement " + std::to_string(worst) +
               " (floor " + std::to_string(kSpecFloor) + ")";
    return o;
}

Outcome genus_two_ratio()
{
    Outcome o;
    const auto s = EisensteinSpec::make(2, 4);
    const Rational ratio = fourier_coeff(s, M("2,1;1,2")) / constant_term(s);
    o.pass = ratio == 13440;
    o.detail = "A_T / A_0 = " + to_string(ratio);
    return o;
}

} // namespace

int main()
{
    criterion(1, "genus-1 regression", 1, genus_one);
    criterion(2, "ordinary stabilization", 1, ordinary_stabilization);
    criterion(3, "local-polynomial suite", 120, local_suite);
    criterion(4, "stabilization dual path", 60, dual_path);
    criterion(5, "proof identities", 300, proof_identities);
    criterion(6, "Satake and divisibility", 10, satake);
    criterion(7, "Lambda-adic interpolation", 300, lambda_interpolation);
    criterion(8, "cross-branch specialization", 300, cross_branch);
    criterion(9, "genus-2 constant ratio", 1, genus_two_ratio);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
