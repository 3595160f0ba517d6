#include "siegel/eisenstein.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lambda.hpp"
#include "siegel/quadform.hpp"

#include <benchmark/benchmark.h>

using namespace siegel;

namespace {

void BM_genus1_expansion(benchmark::State& state)
{
    const auto spec = EisensteinSpec::make(1, 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(eisenstein_expansion(spec, state.range(0)));
}
BENCHMARK(BM_genus1_expansion)->Arg(50)->Arg(200);

void BM_genus2_expansion(benchmark::State& state)
{
    const auto spec = EisensteinSpec::make(2, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(eisenstein_expansion(spec, state.range(0)));
}
BENCHMARK(BM_genus2_expansion)->Arg(3)->Arg(6);

void BM_genus3_coefficient(benchmark::State& state)
{
    const auto spec = EisensteinSpec::make(3, 6);
    const auto T = HalfIntegralMatrix::parse("2,1,0;1,2,1;0,1,4");
    for (auto _ : state)
        benchmark::DoNotOptimize(fourier_coeff(spec, T));
}
BENCHMARK(BM_genus3_coefficient);

void BM_local_oracle(benchmark::State& state)
{
    const auto T = HalfIntegralMatrix::parse("2,1;1,14");
    for (auto _ : state)
        benchmark::DoNotOptimize(f_poly_oracle(T, 3));
}
BENCHMARK(BM_local_oracle);

void BM_local_closed(benchmark::State& state)
{
    const auto T = HalfIntegralMatrix::parse("2,1;1,14");
    for (auto _ : state)
        benchmark::DoNotOptimize(f_poly_closed(T, 3));
}
BENCHMARK(BM_local_closed);

void BM_local_density_rank3(benchmark::State& state)
{
    const auto T = HalfIntegralMatrix::parse("2,0,0;0,6,0;0,0,6");
    for (auto _ : state)
        benchmark::DoNotOptimize(f_poly_density(T, 3));
}
BENCHMARK(BM_local_density_rank3)->Unit(benchmark::kMillisecond);

void BM_stabilize_operator(benchmark::State& state)
{
    const auto src = eisenstein_expansion_orbit(EisensteinSpec::make(2, 6), 5, 3, q_star_depth(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(stabilize_via_operator(2, 6, 5, src));
}
BENCHMARK(BM_stabilize_operator)->Unit(benchmark::kMillisecond);

void BM_divisibility(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(divisibility_check(4, 12, 7));
}
BENCHMARK(BM_divisibility);

void BM_branch_build(benchmark::State& state)
{
    LambdaConfig cfg;
    cfg.M = static_cast<int>(state.range(0));
    cfg.N = static_cast<int>(state.range(0)) * 2 / 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_branch(CharacterSpec::teichmuller_power(2, 5), 5, cfg));
}
BENCHMARK(BM_branch_build)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_lambda_expansion(benchmark::State& state)
{
    LambdaConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_eisenstein(2, 2, 5, 2, cfg));
}
BENCHMARK(BM_lambda_expansion)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
