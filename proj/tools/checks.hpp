#pragma once

#include "vlmc/stationary.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vlmc::checks {

struct Outcome {
    std::string name;
    bool ok = true;
    std::string detail;
};

/// Property suite for one solved model: cylinder additivity, reversal identity,
/// map structure, Lebesgue invariance, seed intervals, occurrence oracle and the
/// Dirichlet sandwich, each where the model supports it.
std::vector<Outcome> run_all(const StationaryMeasure& m, std::uint64_t seed);

} // namespace vlmc::checks
