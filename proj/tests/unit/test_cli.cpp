#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "commands.hpp"
#include "io.hpp"

#include "siegel/errors.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace siegel;
using namespace siegel::app;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + SIEGEL_CLI_PATH + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// Compares stdout against tests/golden/<name>.json. SIEGEL_UPDATE_GOLDEN=1
// rewrites the stored file instead.
void check_golden(const std::string& name, const std::string& args)
{
    const auto r = run_cli(args);
    REQUIRE_MESSAGE(r.exit_code == 0, args);
    const std::string path = std::string(SIEGEL_GOLDEN_DIR) + "/" + name + ".json";
    if (std::getenv("SIEGEL_UPDATE_GOLDEN")) {
        std::ofstream(path) << r.out;
        return;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK_MESSAGE(ss.str() == r.out, "output of `" << args << "` differs from " << path);
    // and the document parses back
    CHECK(json::accept(r.out));
}

} // namespace

TEST_CASE("golden documents")
{
    check_golden("coeff_g1_k4", "coeff --genus 1 --weight 4 --trace-bound 6 --format json");
    check_golden("coeff_g2_k4", "coeff --genus 2 --weight 4 --matrix '2,1;1,2' --format json");
    check_golden("coeff_omega", "coeff --genus 1 --weight 5 --p 5 --omega 1 --trace-bound 4 --pprec 6 --format json");
    check_golden("stabilize_g1_p5", "stabilize --genus 1 --weight 4 --p 5 --trace-bound 10 --format json");
    check_golden("stabilize_g2_p5", "stabilize --genus 2 --weight 6 --p 5 --trace-bound 2 --format json");
    check_golden("satake_n3", "satake --genus 3 --weight 6 --p 2 --format json");
    check_golden("lambda_n1_a2", "lambda --genus 1 --p 5 --a 2 --trace-bound 2 --format json");
}

TEST_CASE("exit codes")
{
    CHECK(run_cli("coeff --genus 2 --weight 4 --matrix '1,0;0,2'").exit_code == 2);
    CHECK(run_cli("coeff --genus 2 --weight 4 --matrix '2,3;3,2'").exit_code == 2);
    CHECK(run_cli("coeff --genus 1 --weight 5 --trace-bound 3").exit_code == 2);
    CHECK(run_cli("coeff --genus 1 --weight 4 --p 5 --omega 2 --trace-bound 3").exit_code == 2);
    CHECK(run_cli("stabilize --genus 1 --weight 4 --p 2").exit_code == 3);
    CHECK(run_cli("stabilize --genus 1 --weight 4 --p 5 --trace-bound 3 --format xml").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("verify --suite satake").exit_code == 0);
    CHECK(run_cli("coeff --genus 1 --weight 4 --trace-bound 2").exit_code == 0);
}

TEST_CASE("table output")
{
    const auto r = run_cli("coeff --genus 1 --weight 4 --trace-bound 6");
    REQUIRE(r.exit_code == 0);
    for (const char* v : {"1/240", "9", "28", "73", "126", "252"})
        CHECK_MESSAGE(r.out.find(v) != std::string::npos, v);
    const auto s = run_cli("stabilize --genus 1 --weight 4 --p 5 --trace-bound 10");
    CHECK(s.out.find("-31/60") != std::string::npos);
}

TEST_CASE("flags override the environment, which overrides defaults")
{
    const auto e = json::parse(run_cli("coeff --genus 1 --trace-bound 1 --format json", "SIEGEL_WEIGHT=6").out);
    CHECK(e["entries"][0]["value"] == "-1/504");
    const auto f = json::parse(run_cli("coeff --genus 1 --weight 4 --trace-bound 1 --format json", "SIEGEL_WEIGHT=6").out);
    CHECK(f["entries"][0]["value"] == "1/240");
}

TEST_CASE("scalar JSON round-trips")
{
    oracle::Gen gen(71);
    for (int it = 0; it < 100; ++it) {
        const Rational q = gen.rational(100000);
        CHECK(rational_from_json(to_json(q)) == q);
        const auto x = PadicNumber::from_rational(7, q, 9);
        CHECK(padic_from_json(to_json(x), 7) == x);
    }
    const auto z = PadicNumber::zero(5, 4);
    CHECK(padic_from_json(to_json(z), 5) == z);
    for (int it = 0; it < 20; ++it) {
        const auto T = gen.positive_definite(static_cast<int>(gen.uniform(1, 3)));
        CHECK(matrix_from_json(to_json(T)) == T);
    }
    const QPoly f({make_rational(1, 3), Rational(0), Rational(-7)});
    CHECK(qpoly_from_json(to_json(f)) == f);
    const auto s = satake_params(3, 6, 2);
    const auto s2 = satake_from_json(to_json(s));
    CHECK(s2.exponents == s.exponents);
    CHECK(s2.l == s.l);
    CHECK_THROWS(rational_from_json(json("1/0")));
}

TEST_CASE("Lambda JSON round-trips")
{
    LambdaConfig cfg;
    const auto f = a_T_lambda(1, 0, HalfIntegralMatrix::diagonal({0}), 5, cfg);
    const auto g = frac_lambda_from_json(to_json(f));
    CHECK(g.num == f.num);
    CHECK(g.num.certified() == f.num.certified());
    CHECK(g.den_atoms == f.den_atoms);
    CHECK(lambda_from_json(to_json(f.num)) == f.num);
}

TEST_CASE("expansion documents round-trip")
{
    JobConfig c;
    c.command = "coeff";
    c.genus = 2;
    c.weight = 4;
    c.trace_bound = 2;
    c.format = "json";
    auto doc = run_command(c).doc;
    const auto e = rational_expansion_from_json(doc);
    CHECK(rational_from_json(doc["constant_term"]) == constant_term(EisensteinSpec::make(2, 4)));
    doc.erase("constant_term");
    CHECK(e == eisenstein_expansion(EisensteinSpec::make(2, 4), 2));
    CHECK(expansion_json(e, doc["spec"]) == doc);

    c.genus = 1;
    c.weight = 5;
    c.p = 5;
    c.omega = 1;
    c.pprec = 6;
    const auto pdoc = run_command(c).doc;
    const auto pe = padic_expansion_from_json(pdoc);
    CHECK(expansion_json(pe, pdoc["spec"], 5) == pdoc);

    JobConfig l;
    l.command = "lambda";
    l.genus = 1;
    l.p = 5;
    l.a = 2;
    l.trace_bound = 2;
    const auto ldoc = run_command(l).doc;
    const auto le = lambda_expansion_from_json(ldoc);
    CHECK(le == lambda_eisenstein(1, 2, 5, 2, LambdaConfig{}, 1));
}

TEST_CASE("configuration errors surface before any output")
{
    JobConfig c;
    c.command = "coeff";
    c.genus = 2;
    c.weight = 4;
    CHECK(run_command(c).doc["entries"].size() == 1);  // constant term only
    c.matrix = "2,0;0,2";
    c.trace_bound = 3;
    CHECK_THROWS_AS(run_command(c), domain_error);
    c.trace_bound = -1;
    c.matrix = "2,0,0;0,2,0;0,0,2";
    CHECK_THROWS_AS(run_command(c), domain_error);  // degree differs from genus
    JobConfig l;
    l.command = "lambda";
    l.genus = 1;
    l.p = 9;
    CHECK_THROWS_AS(run_command(l), domain_error);
    JobConfig v;
    v.command = "verify";
    v.suite = "nonsense";
    CHECK_THROWS_AS(run_command(v), domain_error);
}
