#pragma once

#include <cstdint>
#include <string>

#include "sinr/scenario.hpp"

namespace sinr {

struct GenParams {
    size_t n = 16;  // transmitters
    size_t m = 16;  // receivers
    int dim = 1;
    bool uniform_power = true;
    enum class Layout { Random, GridTx, GridRx } layout = Layout::Random;
    uint64_t seed = 1;
    std::string min_sep = "0.001";  // receiver-transmitter separation
    int decimals = 6;               // coordinate quantization, base-10 digits
    int alpha = 2;
    std::string beta = "2";
    std::string noise = "0.1";
};

// Deterministic scenario generator: same parameters give byte-identical
// JSON. Coordinates are decimal strings with `decimals` fractional digits
// drawn from [0, 1]; every receiver keeps at least min_sep distance from
// every transmitter. Throws ValidationError when the separation cannot be
// met.
ScenarioData generate_scenario(const GenParams& params);

}  // namespace sinr
