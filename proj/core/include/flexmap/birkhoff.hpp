#pragma once

#include <cstdint>

#include "flexmap/circle_map.hpp"

namespace flexmap {

class SmoothCircleMap;

struct BirkhoffOptions {
    int samples = 1000;
    int iterations = 10000;
    int burn_in = 1000;
    std::uint64_t seed = 0;
};

struct BirkhoffEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Time averages of log|f'| along orbits of uniform random starting points.
// The estimate is the mean of per-orbit averages; the standard error is the
// spread across orbits. Deterministic for a fixed seed.
BirkhoffEstimate birkhoff_lambda_abs(const PiecewiseLinearCircleMap& map,
                                     const BirkhoffOptions& options);
BirkhoffEstimate birkhoff_lambda_abs(const SmoothCircleMap& map, const BirkhoffOptions& options);

}  // namespace flexmap
