#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdio>

#include "sinr/engines.hpp"
#include "sinr/generate.hpp"

using namespace sinr;

namespace {

ScenarioData sized_instance(size_t n, int dim, GenParams::Layout layout, bool uniform) {
    GenParams gp;
    gp.n = n;
    gp.m = layout == GenParams::Layout::GridRx ? n * n : n;
    gp.dim = dim;
    gp.layout = layout;
    gp.uniform_power = uniform;
    gp.seed = 0xC0FFEE ^ n;
    // separation must stay feasible as n grows
    const double sep = std::min(1e-3, 0.25 / static_cast<double>(n));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8f", sep);
    gp.min_sep = buf;
    return generate_scenario(gp);
}

void BM_Oracle1D(benchmark::State& state) {
    ScenarioData sc = sized_instance(static_cast<size_t>(state.range(0)), 1,
                                     GenParams::Layout::Random, true);
    RunOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(run_engine(EngineKind::Oracle, sc, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Oracle1D)->RangeMultiplier(2)->Range(1 << 10, 1 << 13)->Complexity();

void BM_Batch1DUniformF64(benchmark::State& state) {
    ScenarioData sc = sized_instance(static_cast<size_t>(state.range(0)), 1,
                                     GenParams::Layout::Random, true);
    RunOptions opt;
    opt.f64_eval_mode = FracEvalMode::Merged;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_engine(EngineKind::Batch1DUniform, sc, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Batch1DUniformF64)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity();

void BM_ApproxK4F64(benchmark::State& state) {
    ScenarioData sc = sized_instance(static_cast<size_t>(state.range(0)), 2,
                                     GenParams::Layout::Random, true);
    RunOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(run_engine(EngineKind::Approx, sc, opt));
}
BENCHMARK(BM_ApproxK4F64)->RangeMultiplier(2)->Range(1 << 8, 1 << 11);

}  // namespace

BENCHMARK_MAIN();
