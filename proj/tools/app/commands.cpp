#include "commands.hpp"

#include "verify.hpp"

#include "siegel/arith.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace siegel::app {

namespace {

// Columns padded to their widest cell.
std::string render(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i)
                w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream s;
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i + 1 < r.size())
                s << std::left << std::setw(static_cast<int>(w[i]) + 2) << r[i];
            else
                s << r[i];
        }
        s << '\n';
    }
    return s.str();
}

std::string gram_label(const HalfIntegralMatrix& T) { return T.to_string(); }

void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw domain_error(msg);
}

void require_prime(std::int64_t p)
{
    require(p != 0, "--p is required for this command");
    require(p >= 2 && is_prime(p), "--p must be a prime, got " + std::to_string(p));
}

void require_odd_prime(std::int64_t p)
{
    require_prime(p);
    if (p == 2)
        throw scope_error("p = 2 is unsupported here: the stabilization and Lambda-adic routines need an odd prime");
}

HalfIntegralMatrix parse_matrix(const JobConfig& cfg)
{
    const auto T = HalfIntegralMatrix::parse(cfg.matrix);
    require(T.degree() == cfg.genus, "--matrix has degree " + std::to_string(T.degree()) +
                                         " but --genus is " + std::to_string(cfg.genus));
    require(T.is_psd(), "--matrix is not positive semidefinite");
    return T;
}

json spec_json(const JobConfig& cfg)
{
    json s{{"n", cfg.genus}, {"kappa", cfg.weight}};
    if (cfg.p != 0)
        s["p"] = cfg.p;
    if (cfg.omega != 0)
        s["character"] = "omega^" + std::to_string(cfg.omega);
    return s;
}

std::int64_t bound_or(const JobConfig& cfg, std::int64_t fallback)
{
    return cfg.trace_bound >= 0 ? cfg.trace_bound : fallback;
}

CommandOutput cmd_coeff(const JobConfig& cfg)
{
    require(cfg.matrix.empty() || cfg.trace_bound < 0, "give either --matrix or --trace-bound, not both");
    CommandOutput out;
    std::vector<std::vector<std::string>> rows{{"G = 2T", "A_T"}};
    if (cfg.omega != 0) {
        require_odd_prime(cfg.p);
        const auto spec = EisensteinSpec::make(cfg.genus, cfg.weight,
                                               CharacterSpec::teichmuller_power(cfg.omega, cfg.p));
        QExpansion<PadicNumber> e;
        if (!cfg.matrix.empty()) {
            const auto T = parse_matrix(cfg);
            e = QExpansion<PadicNumber>(cfg.genus, T.trace().get_si(), spec.describe());
            e.insert(T, fourier_coeff_chi(spec, T, cfg.pprec));
        } else {
            e = nebentypus_expansion(spec, bound_or(cfg, 0), cfg.pprec, cfg.jobs);
        }
        out.doc = expansion_json(e, spec_json(cfg), cfg.p);
        for (const auto& T : e.keys())
            rows.push_back({gram_label(T), e.at(T).to_string()});
    } else {
        const auto spec = EisensteinSpec::make(cfg.genus, cfg.weight);
        QExpansion<Rational> e;
        if (!cfg.matrix.empty()) {
            const auto T = parse_matrix(cfg);
            e = QExpansion<Rational>(cfg.genus, T.trace().get_si(), spec.describe());
            e.insert(T, fourier_coeff(spec, T));
        } else {
            e = eisenstein_expansion(spec, bound_or(cfg, 0), cfg.jobs);
        }
        out.doc = expansion_json(e, spec_json(cfg));
        out.doc["constant_term"] = to_json(constant_term(spec));
        for (const auto& T : e.keys())
            rows.push_back({gram_label(T), siegel::to_string(e.at(T))});
    }
    out.table = render(rows);
    return out;
}

CommandOutput cmd_stabilize(const JobConfig& cfg)
{
    require_odd_prime(cfg.p);
    const int n = cfg.genus;
    const int kappa = cfg.weight;
    const auto spec = EisensteinSpec::make(n, kappa);
    const std::int64_t bound = bound_or(cfg, 3);
    const auto closed = stabilized_expansion(n, kappa, cfg.p, bound, cfg.jobs);
    const bool with_q_star = n <= 2;
    const auto src = eisenstein_expansion_orbit(spec, cfg.p, bound,
                                                with_q_star ? std::max(operator_depth(n), q_star_depth(n))
                                                            : operator_depth(n),
                                                cfg.jobs);
    const bool op_ok = stabilize_via_operator(n, kappa, cfg.p, src) == closed;
    json q_star_flag = nullptr;
    bool qs_ok = true;
    if (with_q_star) {
        qs_ok = stabilize_via_q_star(n, kappa, cfg.p, src) == closed;
        q_star_flag = qs_ok;
    }
    bool semi = true;
    for (const auto& T : closed.keys())
        semi = semi && stabilized_coeff(n, kappa, cfg.p, T.scaled(cfg.p)) == closed.at(T);

    CommandOutput out;
    out.doc = expansion_json(closed, spec_json(cfg));
    out.doc["agreement"] = {{"operator", op_ok}, {"q_star", q_star_flag}, {"semi_ordinary", semi}};
    std::vector<std::vector<std::string>> rows{{"G = 2T", "A_T(E*)", "A_T(E)"}};
    for (const auto& T : closed.keys())
        rows.push_back({gram_label(T), siegel::to_string(closed.at(T)), siegel::to_string(src.at(T))});
    out.table = render(rows);
    out.table += std::string("operator path agrees: ") + (op_ok ? "yes" : "NO") + "\n";
    out.table += std::string("Q*-path agrees: ") + (with_q_star ? (qs_ok ? "yes" : "NO") : "skipped (n > 2)") + "\n";
    out.table += std::string("A_pT = A_T: ") + (semi ? "yes" : "NO") + "\n";
    out.exit_code = (op_ok && qs_ok && semi) ? 0 : 1;
    return out;
}

CommandOutput cmd_satake(const JobConfig& cfg)
{
    require_prime(cfg.p);
    const auto s = satake_params(cfg.genus, cfg.weight, cfg.p);
    const auto h = hecke_polynomial(s);
    CommandOutput out;
    out.doc = to_json(s);
    out.doc["hecke"] = {{"coeffs", to_json(h.poly)}, {"factor_exponents", h.factor_exponents}};
    const bool simil = s.similitude_exponent() == expected_similitude_exponent(cfg.genus, cfg.weight);
    out.doc["similitude_ok"] = simil;
    bool ok = simil;
    std::ostringstream t;
    t << "psi exponents (base " << cfg.p << "):";
    for (auto e : s.exponents)
        t << ' ' << e;
    t << "\nQ_l(Y) = " << h.poly.to_string("Y") << "\nfactors 1 - l^e Y, e:";
    for (auto e : h.factor_exponents)
        t << ' ' << e;
    t << "\nsimilitude normalization: " << (simil ? "ok" : "FAIL") << '\n';
    const auto qs = q_star(cfg.genus, cfg.weight, cfg.p);
    out.doc["q_star"] = to_json(qs.poly);
    t << "Q*(Y) = " << qs.poly.to_string("Y") << '\n';
    if (cfg.weight % 2 == 0) {
        const auto d = divisibility_check(cfg.genus, cfg.weight, cfg.p);
        out.doc["divisibility"] = {{"divides", d.divides}, {"quotient", to_json(d.quotient)}};
        t << "R(p^{k-n-1}, Y) | Q*(Y): " << (d.divides ? "yes, quotient " + d.quotient.to_string("Y") : "NO")
          << '\n';
        ok = ok && d.divides;
    }
    if (cfg.genus % 2 == 1 && cfg.genus >= 3) {
        const bool z = zharkovskaya_check(cfg.genus, cfg.weight, cfg.p);
        out.doc["zharkovskaya"] = z;
        t << "Zharkovskaya factorization: " << (z ? "ok" : "FAIL") << '\n';
        ok = ok && z;
    }
    out.table = t.str();
    out.exit_code = ok ? 0 : 1;
    return out;
}

CommandOutput cmd_lambda(const JobConfig& cfg)
{
    require_odd_prime(cfg.p);
    require(cfg.genus >= 1, "--genus must be positive");
    LambdaConfig lc;
    lc.M = cfg.pprec;
    lc.N = cfg.xprec;
    require(lc.M >= 2 && lc.N >= 1, "--pprec must be >= 2 and --xprec >= 1");
    const int a = std::max(cfg.a, 0);
    const std::int64_t bound = bound_or(cfg, 2);
    const auto B = b_poly(cfg.genus, cfg.p);
    const auto e = lambda_eisenstein(cfg.genus, a, cfg.p, bound, lc, cfg.jobs);

    json spec{{"n", cfg.genus}, {"a", a}, {"p", cfg.p}, {"M", lc.M}, {"N", lc.N}};
    CommandOutput out;
    out.doc = expansion_json(e, spec);
    out.doc["B"] = {{"factors", B.names}, {"coeffs", to_json(B.product)}, {"lambda", to_json(B.as_lambda(lc.M, lc.N))}};
    json poles = json::array();
    std::vector<std::vector<std::string>> rows{{"G = 2T", "poles", "B(X) A_T(omega^a; X)"}};
    for (const auto& T : e.keys()) {
        const auto f = a_T_lambda(cfg.genus, a, T, cfg.p, lc);
        std::string names;
        for (int i : f.den_atoms)
            names += (names.empty() ? "" : ",") + B.names[static_cast<std::size_t>(i)];
        poles.push_back({{"G", to_json(T)}, {"den_atoms", f.den_atoms}});
        rows.push_back({gram_label(T), names.empty() ? "-" : names, e.at(T).to_string()});
    }
    out.doc["poles"] = poles;
    out.table = render(rows);
    return out;
}

CommandOutput cmd_verify(const JobConfig& cfg)
{
    VerifyOptions opt;
    if (cfg.p != 0) {
        require_odd_prime(cfg.p);
        opt.p = cfg.p;
    }
    if (cfg.a >= 0)
        opt.a = cfg.a;
    opt.M = cfg.pprec;
    opt.N = cfg.xprec;
    opt.jobs = cfg.jobs;
    const auto lines = run_suite(cfg.suite, opt);
    CommandOutput out;
    json checks = json::array();
    bool all = true;
    std::vector<std::vector<std::string>> rows;
    for (const auto& l : lines) {
        all = all && l.pass;
        checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}, {"seconds", l.seconds}});
        std::ostringstream sec;
        sec << std::fixed << std::setprecision(2) << l.seconds << "s";
        rows.push_back({l.pass ? "PASS" : "FAIL", l.name, l.detail, sec.str()});
    }
    out.doc = {{"suite", cfg.suite}, {"pass", all}, {"checks", checks}};
    out.table = render(rows);
    out.exit_code = all ? 0 : 1;
    return out;
}

} // namespace

CommandOutput run_command(const JobConfig& cfg)
{
    require(cfg.format == "json" || cfg.format == "table", "--format must be json or table");
    require(cfg.jobs >= 1, "--jobs must be at least 1");
    if (cfg.command == "coeff")
        return cmd_coeff(cfg);
    if (cfg.command == "stabilize")
        return cmd_stabilize(cfg);
    if (cfg.command == "satake")
        return cmd_satake(cfg);
    if (cfg.command == "lambda")
        return cmd_lambda(cfg);
    if (cfg.command == "verify")
        return cmd_verify(cfg);
    throw domain_error("unknown command '" + cfg.command + "'");
}

} // namespace siegel::app
