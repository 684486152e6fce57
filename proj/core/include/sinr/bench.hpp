#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sinr/engines.hpp"

namespace sinr {

struct BenchRow {
    std::string engine;
    size_t n = 0, m = 0;
    BackendKind backend = BackendKind::Float64;
    double median_ms = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    // least-squares slope of log(time) against log(n); empty below 2 sizes
    std::optional<double> slope;
};

// Seeded 1-d uniform-power sweep with n = m; each size is generated
// deterministically and timed over `reps` runs (median). The float path
// runs the merged fraction pipeline, the one whose operation count the
// sweep is meant to measure.
BenchResult bench_sweep(EngineKind engine, BackendKind backend, const std::vector<size_t>& sizes,
                        int reps, uint64_t seed, int threads);

double loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace sinr
