#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sinr/fraction.hpp"
#include "sinr/points.hpp"
#include "sinr/scenario.hpp"

namespace sinr {

enum class EngineKind { Oracle, Batch1DUniform, Batch1DWeighted, GridTx, GridRx, Approx, Ptas };

inline const char* engine_name(EngineKind e) {
    switch (e) {
        case EngineKind::Oracle: return "oracle";
        case EngineKind::Batch1DUniform: return "1d-uniform";
        case EngineKind::Batch1DWeighted: return "1d-weighted";
        case EngineKind::GridTx: return "grid-tx";
        case EngineKind::GridRx: return "grid-rx";
        case EngineKind::Approx: return "approx";
        case EngineKind::Ptas: return "ptas";
    }
    return "?";
}

std::optional<EngineKind> engine_from_name(const std::string& name);

// Polygon configuration for the approximate engines: gamma = sec(pi/k)^alpha
// bounds the surrogate against the true quantity on both sides.
struct PtasConfig {
    double eps = 0.0;
    int k = 4;
    double gamma = 1.0;
};

// Least even k >= 4 with sec(pi/k)^alpha <= 1 + eps. Throws InvalidEps
// outside (0, 1).
PtasConfig choose_k(double eps, int alpha);
PtasConfig config_for_k(int k, int alpha);

enum class CandidateSource { EuclideanNN, WeightedNN };

struct RunOptions {
    BackendKind backend = BackendKind::Float64;
    int threads = 1;
    // relative guard below which float64 definite verdicts demote to Uncertain
    double tau = 1e-6;
    // float64 fraction evaluation: Direct is the accuracy default, Merged
    // the fast path used by benchmarks
    FracEvalMode f64_eval_mode = FracEvalMode::Direct;
    double eps = 0.1;  // ptas engine only
    std::optional<CandidateSource> candidate_source;
    // optional affine map applied to receiver grids: (x, y) -> (a x + b y + e, c x + d y + f),
    // entries as decimal strings [a, b, c, d, e, f]
    std::optional<std::array<std::string, 6>> grid_affine;
};

// Threshold rule shared by every engine: Hear when value >= gamma*beta*(1+guard),
// Silent when value < (beta/gamma)*(1-guard), Uncertain otherwise. With
// gamma = 1 and guard = 0 this is the exact reception test.
template <class T>
VerdictKind decide_verdict(const T& value, const T& beta, const T& gamma, double guard,
                           bool* demoted = nullptr) {
    const T hear_thr = gamma * beta;
    const T silent_thr = beta / gamma;
    auto classify = [&](const T& h, const T& s) {
        if (value >= h) return VerdictKind::Hear;
        if (value < s) return VerdictKind::Silent;
        return VerdictKind::Uncertain;
    };
    const VerdictKind plain = classify(hear_thr, silent_thr);
    if (demoted) *demoted = false;
    if (guard <= 0.0) return plain;
    const VerdictKind guarded = classify(T(hear_thr * T(1 + guard)), T(silent_thr * T(1 - guard)));
    if (demoted) *demoted = guarded == VerdictKind::Uncertain && plain != VerdictKind::Uncertain;
    return guarded;
}

// Direct SIN ratio of transmitter i at q: the defining formula, summed
// term by term.
template <class T>
T sin_ratio_direct(const std::vector<Pt2<T>>& pos, const std::vector<T>& power, int alpha,
                   const T& noise, const Pt2<T>& q, size_t i) {
    if (pos.empty() || i >= pos.size()) throw ValidationError("bad transmitter index");
    const unsigned half = static_cast<unsigned>(alpha) / 2;
    T interference(0);
    T signal(0);
    for (size_t j = 0; j < pos.size(); ++j) {
        const T d2 = dist2(pos[j], q);
        if (d2 == T(0)) throw QueryOnTransmitter("query lies on a transmitter");
        const T term = power[j] / scalar_pow(d2, half);
        if (j == i)
            signal = term;
        else
            interference += term;
    }
    return signal / (interference + noise);
}

template <class T>
T sin_ratio_direct_1d(const std::vector<T>& pos, const std::vector<T>& power, int alpha,
                      const T& noise, const T& q, size_t i) {
    std::vector<Pt2<T>> p2(pos.size());
    for (size_t j = 0; j < pos.size(); ++j) p2[j] = {pos[j], T(0)};
    return sin_ratio_direct(p2, power, alpha, noise, Pt2<T>{q, T(0)}, i);
}

// Polygonal-norm total-signal surrogate, computed per wedge frame through
// the dominance pair decomposition. Exposed for tests; the approximate
// engines call it internally.
std::vector<double> tilde_f_batch_f64(const std::vector<Pt2<double>>& sites,
                                      const std::vector<double>& power, int alpha,
                                      const std::vector<Pt2<double>>& queries, int k,
                                      FracEvalMode mode = FracEvalMode::Direct, int threads = 1);

std::vector<Rat> tilde_f_batch_exact_k4(const std::vector<Pt2<Rat>>& sites,
                                        const std::vector<Rat>& power, int alpha,
                                        const std::vector<Pt2<Rat>>& queries);

// Run an engine over a parsed scenario. Throws EngineMismatch when the
// scenario shape does not fit the engine, ValidationError/ParseError for
// bad inputs.
EngineReport run_engine(EngineKind engine, const ScenarioData& scenario, const RunOptions& options);

}  // namespace sinr
