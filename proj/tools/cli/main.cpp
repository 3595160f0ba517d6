#include "../app/commands.hpp"

#include "siegel/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, scope = 3 };

void add_common(CLI::App* sub, siegel::app::JobConfig& cfg)
{
    sub->add_option("--genus", cfg.genus, "genus n")->envname("SIEGEL_GENUS")->capture_default_str();
    sub->add_option("--weight", cfg.weight, "weight kappa")->envname("SIEGEL_WEIGHT")->capture_default_str();
    sub->add_option("--p", cfg.p, "prime p (or l for satake)")->envname("SIEGEL_P");
    sub->add_option("--a", cfg.a, "branch index a, 0 <= a < p-1")->envname("SIEGEL_A");
    sub->add_option("--omega", cfg.omega, "Nebentypus omega^b for coeff")->envname("SIEGEL_OMEGA");
    sub->add_option("--matrix", cfg.matrix, "entries of 2T, rows separated by ';'")->envname("SIEGEL_MATRIX");
    sub->add_option("--trace-bound", cfg.trace_bound, "enumerate all T with tr T <= bound")
        ->envname("SIEGEL_TRACE_BOUND");
    sub->add_option("--pprec", cfg.pprec, "p-adic precision M")->envname("SIEGEL_PPREC")->capture_default_str();
    sub->add_option("--xprec", cfg.xprec, "X-adic precision N")->envname("SIEGEL_XPREC")->capture_default_str();
    sub->add_option("--format", cfg.format, "json or table")
        ->envname("SIEGEL_FORMAT")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads")->envname("SIEGEL_JOBS")->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Siegel Eisenstein series: coefficients, p-stabilization, Satake data and Lambda-adic families"};
    app.require_subcommand(1);
    siegel::app::JobConfig cfg;

    struct Cmd {
        const char* name;
        const char* help;
    };
    const Cmd cmds[] = {
        {"coeff", "Fourier coefficients of E_k^(n), optionally with Nebentypus omega^b"},
        {"stabilize", "semi-ordinary p-stabilization via closed form and operator"},
        {"satake", "Satake parameters, Hecke polynomial and Q*"},
        {"lambda", "B-cleared Lambda-adic expansion for the branch omega^a"},
        {"verify", "run a verification suite"},
    };
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, cfg);
        if (std::string(c.name) == "verify")
            sub->add_option("--suite", cfg.suite, "local, stab, satake, lambda or all")
                ->envname("SIEGEL_SUITE")
                ->check(CLI::IsMember({"local", "stab", "satake", "lambda", "all"}))
                ->capture_default_str();
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        const auto out = siegel::app::run_command(cfg);
        if (cfg.format == "json")
            std::cout << out.doc.dump(2) << '\n';
        else
            std::cout << out.table;
        return out.exit_code == 0 ? ok : check_failed;
    } catch (const siegel::scope_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return scope;
    } catch (const siegel::consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return check_failed;
    } catch (const siegel::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return check_failed;
    }
}
