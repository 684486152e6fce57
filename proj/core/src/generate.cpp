#include "sinr/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "sinr/errors.hpp"

namespace sinr {

namespace {

constexpr int kMaxAttempts = 4096;

// integer units of 10^-decimals rendered as a fixed-width decimal string
std::string units_to_decimal(int64_t units, int decimals) {
    if (decimals == 0) return std::to_string(units);
    const bool neg = units < 0;
    uint64_t u = static_cast<uint64_t>(neg ? -units : units);
    uint64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    std::string frac = std::to_string(u % scale);
    frac.insert(frac.begin(), static_cast<size_t>(decimals) - frac.size(), '0');
    return (neg ? "-" : "") + std::to_string(u / scale) + "." + frac;
}

struct UnitRng {
    std::mt19937_64 rng;
    explicit UnitRng(uint64_t seed) : rng(seed) {}
    // uniform integer in [0, hi]
    int64_t below(int64_t hi) { return static_cast<int64_t>(rng() % static_cast<uint64_t>(hi + 1)); }
};

int64_t sep_units(const std::string& min_sep, int decimals) {
    const Rat sep = rat_from_decimal(min_sep);
    const Rat scaled = sep * pow10_rat(decimals);
    // ceil(scaled)
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return q.get_si();
}

int64_t nearest_gap(const std::vector<int64_t>& sorted, int64_t v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    int64_t best = INT64_MAX;
    if (it != sorted.end()) best = std::min(best, *it - v);
    if (it != sorted.begin()) best = std::min(best, v - *(it - 1));
    return best;
}

std::vector<int64_t> distinct_sorted_coords(UnitRng& rng, size_t count, int64_t hi) {
    if (static_cast<int64_t>(count) > hi + 1)
        throw ValidationError("not enough distinct grid coordinates at this quantization");
    std::set<int64_t> vals;
    while (vals.size() < count) vals.insert(rng.below(hi));
    return {vals.begin(), vals.end()};
}

}  // namespace

ScenarioData generate_scenario(const GenParams& p) {
    if (p.dim != 1 && p.dim != 2) throw ValidationError("dim must be 1 or 2");
    if (p.alpha < 2 || p.alpha % 2) throw ValidationError("alpha must be even and positive");
    UnitRng rng(p.seed);
    int64_t hi = 1;
    for (int i = 0; i < p.decimals; ++i) hi *= 10;
    const int64_t sep = sep_units(p.min_sep, p.decimals);

    ScenarioData s;
    s.alpha = p.alpha;
    s.beta = DecimalValue(p.beta);
    s.noise = DecimalValue(p.noise);
    s.dimension = p.dim;

    auto power_value = [&]() -> std::string {
        if (p.uniform_power) return "1";
        // three-decimal powers in [0.1, 10]
        const int64_t u = 100 + rng.below(9900);
        return units_to_decimal(u, 3);
    };

    auto push_tx = [&](const std::vector<int64_t>& units, const std::string& power) {
        Transmitter t;
        for (int64_t u : units) t.pos.emplace_back(units_to_decimal(u, p.decimals));
        t.power = DecimalValue(power);
        s.transmitters.push_back(std::move(t));
    };

    switch (p.layout) {
        case GenParams::Layout::Random: {
            // distinct transmitter positions
            std::set<std::pair<int64_t, int64_t>> seen;
            std::vector<int64_t> txs_sorted;
            std::vector<std::pair<int64_t, int64_t>> tx2;
            int tx_attempts = 0;
            while (s.transmitters.size() < p.n) {
                if (++tx_attempts > kMaxAttempts + static_cast<int>(4 * p.n))
                    throw ValidationError("cannot place distinct transmitters at this quantization");
                const int64_t x = rng.below(hi);
                const int64_t y = p.dim == 2 ? rng.below(hi) : 0;
                if (!seen.insert({x, y}).second) continue;
                if (p.dim == 1) {
                    push_tx({x}, power_value());
                    txs_sorted.push_back(x);
                } else {
                    push_tx({x, y}, power_value());
                    tx2.push_back({x, y});
                }
            }
            std::sort(txs_sorted.begin(), txs_sorted.end());
            const __int128 sep2 = static_cast<__int128>(sep) * sep;
            for (size_t i = 0; i < p.m; ++i) {
                int attempt = 0;
                for (;; ++attempt) {
                    if (attempt > kMaxAttempts)
                        throw ValidationError("separation constraint infeasible");
                    const int64_t x = rng.below(hi);
                    if (p.dim == 1) {
                        if (nearest_gap(txs_sorted, x) < sep) continue;
                        s.receivers.push_back({DecimalValue(units_to_decimal(x, p.decimals))});
                        break;
                    }
                    const int64_t y = rng.below(hi);
                    bool ok = true;
                    for (const auto& t : tx2) {
                        const __int128 dx = t.first - x, dy = t.second - y;
                        if (dx * dx + dy * dy < sep2) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    s.receivers.push_back({DecimalValue(units_to_decimal(x, p.decimals)),
                                           DecimalValue(units_to_decimal(y, p.decimals))});
                    break;
                }
            }
            break;
        }
        case GenParams::Layout::GridTx: {
            if (p.dim != 2) throw ValidationError("grid-tx layout requires dim 2");
            const size_t side = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(p.n))));
            if (side * side != p.n) throw ValidationError("grid-tx layout needs a square n");
            auto xs = distinct_sorted_coords(rng, side, hi);
            auto ys = distinct_sorted_coords(rng, side, hi);
            for (int64_t x : xs)
                for (int64_t y : ys) push_tx({x, y}, "1");  // uniform power by construction
            const __int128 sep2 = static_cast<__int128>(sep) * sep;
            for (size_t i = 0; i < p.m; ++i) {
                int attempt = 0;
                for (;; ++attempt) {
                    if (attempt > kMaxAttempts)
                        throw ValidationError("separation constraint infeasible");
                    const int64_t x = rng.below(hi), y = rng.below(hi);
                    // nearest grid point has the nearest coordinate in each axis
                    const int64_t gx = nearest_gap(xs, x), gy = nearest_gap(ys, y);
                    if (static_cast<__int128>(gx) * gx + static_cast<__int128>(gy) * gy < sep2)
                        continue;
                    s.receivers.push_back({DecimalValue(units_to_decimal(x, p.decimals)),
                                           DecimalValue(units_to_decimal(y, p.decimals))});
                    break;
                }
            }
            break;
        }
        case GenParams::Layout::GridRx: {
            if (p.dim != 2) throw ValidationError("grid-rx layout requires dim 2");
            const size_t side = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(p.m))));
            if (side * side != p.m) throw ValidationError("grid-rx layout needs a square m");
            auto xs = distinct_sorted_coords(rng, side, hi);
            auto ys = distinct_sorted_coords(rng, side, hi);
            GridSpec g;
            for (int64_t x : xs) g.xs.emplace_back(units_to_decimal(x, p.decimals));
            for (int64_t y : ys) g.ys.emplace_back(units_to_decimal(y, p.decimals));
            s.grid = std::move(g);
            const __int128 sep2 = static_cast<__int128>(sep) * sep;
            std::set<std::pair<int64_t, int64_t>> seen;
            while (s.transmitters.size() < p.n) {
                int attempt = 0;
                for (;; ++attempt) {
                    if (attempt > kMaxAttempts)
                        throw ValidationError("separation constraint infeasible");
                    const int64_t x = rng.below(hi), y = rng.below(hi);
                    const int64_t gx = nearest_gap(xs, x), gy = nearest_gap(ys, y);
                    if (static_cast<__int128>(gx) * gx + static_cast<__int128>(gy) * gy < sep2)
                        continue;
                    if (!seen.insert({x, y}).second) continue;
                    push_tx({x, y}, power_value());
                    break;
                }
            }
            break;
        }
    }
    return s;
}

}  // namespace sinr
