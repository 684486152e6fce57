#include "sinr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "sinr/generate.hpp"

#if defined(__SSE2__)
#include <pmmintrin.h>
#include <xmmintrin.h>
#endif

namespace sinr {

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchResult bench_sweep(EngineKind engine, BackendKind backend, const std::vector<size_t>& sizes,
                        int reps, uint64_t seed, int threads) {
#if defined(__SSE2__)
    // subnormal-heavy intermediate values would skew large float sweeps
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
#endif
    BenchResult out;
    std::vector<std::pair<double, double>> pts;
    for (size_t size : sizes) {
        GenParams gp;
        gp.n = size;
        gp.m = size;
        gp.dim = 1;
        gp.uniform_power = true;
        gp.layout = GenParams::Layout::Random;
        gp.seed = seed ^ (0x9e3779b97f4a7c15ULL * size);
        // keep the receiver-transmitter separation feasible at any size:
        // n transmitters exclude ~2*sep*n of the unit interval
        const double sep = std::min(1e-3, 0.25 / static_cast<double>(size));
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8f", sep);
        gp.min_sep = buf;
        ScenarioData sc = generate_scenario(gp);

        RunOptions opt;
        opt.backend = backend;
        opt.threads = threads;
        opt.f64_eval_mode = FracEvalMode::Merged;

        std::vector<double> times;
        const int r = std::max(1, reps);
        for (int rep = 0; rep < r; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            (void)run_engine(engine, sc, opt);
            times.push_back(
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count());
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        out.rows.push_back({engine_name(engine), size, size, backend, median});
        pts.emplace_back(static_cast<double>(size), std::max(median, 1e-6));
    }
    if (pts.size() >= 2) out.slope = loglog_slope(pts);
    return out;
}

}  // namespace sinr
