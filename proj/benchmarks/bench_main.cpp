#include <benchmark/benchmark.h>

#include "witnesslab/extremal.hpp"
#include "witnesslab/lambda_lp.hpp"
#include "witnesslab/witness.hpp"

namespace wl = witnesslab;

static void BM_CubicResidues(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(wl::arith::cubic_residues(q));
}
BENCHMARK(BM_CubicResidues)->Arg(343)->Arg(2197)->Arg(10007);

static void BM_TrigProfile(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(wl::lp::trig_profile(q));
}
BENCHMARK(BM_TrigProfile)->Arg(499)->Arg(2999)->Arg(9973);

static void BM_SolveLp(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    wl::lp::LpProblem problem(q);
    for (auto _ : state) benchmark::DoNotOptimize(wl::lp::solve_lp(problem));
}
BENCHMARK(BM_SolveLp)->Arg(91)->Arg(343)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_FamilyBuild(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(wl::witness::build_family(q));
}
BENCHMARK(BM_FamilyBuild)->Arg(90)->Arg(2197)->Arg(2940)->Unit(benchmark::kMillisecond);

static void BM_WitnessEvaluateAll(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    wl::witness::WitnessFunction w = wl::witness::build_family(q);
    for (auto _ : state) benchmark::DoNotOptimize(w.evaluate_all());
}
BENCHMARK(BM_WitnessEvaluateAll)->Arg(910)->Arg(2198)->Unit(benchmark::kMillisecond);

static void BM_DeltaExact(benchmark::State& state) {
    const std::int64_t q = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(wl::extremal::delta_exact(q));
}
BENCHMARK(BM_DeltaExact)->Arg(91)->Arg(126)->Arg(189)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
