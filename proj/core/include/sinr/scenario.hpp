#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sinr/scalar.hpp"

namespace sinr {

// A numeric input kept in all three forms: the original decimal text
// (diffable, authoritative), the exact rational, and the double.
struct DecimalValue {
    std::string text;
    Rat rat;
    double f64 = 0.0;

    DecimalValue() = default;
    explicit DecimalValue(std::string t)
        : text(std::move(t)), rat(rat_from_decimal(text)), f64(parse_double(text)) {}
};

struct Transmitter {
    std::vector<DecimalValue> pos;  // size = dimension
    DecimalValue power;
};

struct GridSpec {
    std::vector<DecimalValue> xs, ys;
};

struct ScenarioData {
    int alpha = 2;  // positive even integer
    DecimalValue beta, noise;
    int dimension = 1;
    std::vector<Transmitter> transmitters;
    // exactly one of: explicit receiver list, or receiver grid
    std::vector<std::vector<DecimalValue>> receivers;
    std::optional<GridSpec> grid;

    bool has_grid() const { return grid.has_value(); }
    size_t receiver_count() const {
        return has_grid() ? grid->xs.size() * grid->ys.size() : receivers.size();
    }
    bool uniform_power() const;
    // largest number of base-10 fractional digits over every coordinate
    int max_coordinate_places() const;
};

// Parse/serialize the scenario JSON document. Field names are part of the
// file format: alpha, beta, noise, dimension, transmitters[{pos, power}],
// receivers as [[...]] or {"grid": {"xs": [...], "ys": [...]}}.
ScenarioData scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioData& s);

// Structural validation: ranges, dimensions, and (for explicit receiver
// lists) the no-receiver-on-transmitter rule. Grid scenarios may contain
// coincident grid points; engines mark those entries as rejected.
void validate_scenario(const ScenarioData& s);

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------
enum class VerdictKind { Hear, Silent, Uncertain };

inline const char* verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::Hear: return "Hear";
        case VerdictKind::Silent: return "Silent";
        case VerdictKind::Uncertain: return "Uncertain";
    }
    return "?";
}

struct ResultRow {
    int index = 0;
    std::string x, y;  // y empty in one dimension
    int candidate = -1;
    std::string quantity;  // E or its surrogate, decimal
    VerdictKind verdict = VerdictKind::Silent;
    bool demoted = false;   // definite verdict demoted by the float guard
    bool rejected = false;  // receiver coincides with a transmitter (grid entries)

    std::string flags() const {
        std::string f;
        if (demoted) f += "demoted";
        if (rejected) {
            if (!f.empty()) f += ";";
            f += "rejected";
        }
        return f;
    }
};

struct EngineReport {
    std::string engine;
    BackendKind backend = BackendKind::Float64;
    std::vector<ResultRow> rows;

    // raw per-receiver values for verification: the total-signal field
    // (f, or its polygonal surrogate) and the decision quantity; the exact
    // vectors are filled on the exact backend only
    std::vector<double> field;
    std::vector<Rat> field_exact;
    std::vector<Rat> quantity_exact;

    // metadata
    int k = 0;            // polygon directions (approximate engines)
    double gamma = 1.0;   // approximation factor sec(pi/k)^alpha
    double eps = 0.0;
    std::string normalization;  // coordinate map used by the algebra stage
    double candidate_ms = 0.0, algebra_ms = 0.0, verdict_ms = 0.0;
    int threads = 1;
    std::string notes;
};

}  // namespace sinr
