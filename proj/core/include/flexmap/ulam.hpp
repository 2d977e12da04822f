#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "flexmap/circle_map.hpp"
#include "flexmap/density.hpp"

namespace flexmap {

class SmoothCircleMap;

// Row-stochastic discretisation of the transfer operator on uniform bins:
// entry (i, j) is the fraction of bin i whose image lands in bin j. Rows are
// assembled from exact interval-image intersections (monotone bracketing on
// blend segments), not sampling.
struct UlamOperator {
    int bins = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;

    double row_sum(std::size_t i) const;
    // pushes bin masses forward one step: out[j] = sum_i mass[i] * w(i, j)
    void apply_to_masses(const std::vector<double>& mass, std::vector<double>& out) const;
};

UlamOperator build_ulam_operator(const PiecewiseLinearCircleMap& map, int bins);
UlamOperator build_ulam_operator(const SmoothCircleMap& map, int bins);

// Stationary density of the Ulam operator by power iteration on bin masses
// (L1 change of successive iterates <= tol, capped at 10^6 sweeps).
StepDensity ulam_stationary(const PiecewiseLinearCircleMap& map, int bins, double tol = 1e-12);
StepDensity ulam_stationary(const SmoothCircleMap& map, int bins, double tol = 1e-12);

}  // namespace flexmap
