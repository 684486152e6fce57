#include <benchmark/benchmark.h>

#include <random>

#include "sinr/envelope.hpp"
#include "sinr/fraction.hpp"
#include "sinr/multipoint.hpp"

using namespace sinr;

namespace {

std::vector<double> random_coeffs(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> c(n);
    for (auto& x : c) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    return c;
}

void BM_PolyMulF64(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    Poly<double> a{random_coeffs(n, 1)}, b{random_coeffs(n, 2)};
    for (auto _ : state) benchmark::DoNotOptimize(poly_mul(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyMulF64)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_PolyMulExact(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    std::mt19937_64 rng(3);
    Poly<Rat> a, b;
    for (size_t i = 0; i < n; ++i) {
        a.c.push_back(Rat(static_cast<long>(rng() % 2001) - 1000, 1000));
        b.c.push_back(Rat(static_cast<long>(rng() % 2001) - 1000, 1000));
        a.c.back().canonicalize();
        b.c.back().canonicalize();
    }
    a.trim();
    b.trim();
    for (auto _ : state) benchmark::DoNotOptimize(poly_mul(a, b));
}
BENCHMARK(BM_PolyMulExact)->RangeMultiplier(4)->Range(64, 4096);

void BM_MultipointEvalF64(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    Poly<double> a{random_coeffs(n, 4)};
    std::vector<double> xs = random_coeffs(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(poly_eval_batch(a, xs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MultipointEvalF64)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_FracEvalMergedF64(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    std::mt19937_64 rng(6);
    std::vector<Fraction<double>> fs;
    for (size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        Poly<double> lin = Poly<double>::linear(-r, 1.0);
        fs.emplace_back(Poly<double>::constant(1.0), poly_mul(lin, lin));
    }
    std::vector<double> xs = random_coeffs(n, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(frac_eval_batch(fs, xs, FracEvalMode::Merged));
}
BENCHMARK(BM_FracEvalMergedF64)->RangeMultiplier(4)->Range(256, 8192);

void BM_EnvelopeF64(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    std::mt19937_64 rng(8);
    std::vector<WeightedSite1D<double>> sites(n);
    for (size_t i = 0; i < n; ++i) {
        const double pos = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        sites[i] = {pos, 0.1 + static_cast<double>(rng() >> 11) * 0x1.0p-53, static_cast<int>(i)};
    }
    for (auto _ : state) benchmark::DoNotOptimize(weighted_voronoi_1d(sites, 2));
}
BENCHMARK(BM_EnvelopeF64)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace

BENCHMARK_MAIN();
