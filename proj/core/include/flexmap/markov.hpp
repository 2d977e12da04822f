#pragma once

#include <cstdint>
#include <vector>

#include "flexmap/circle_map.hpp"

namespace flexmap {

class SmoothCircleMap;

// Level-m Markov partition generated by the m-fold preimages of the fixed
// point near 0. For a degree-2 map with two full branches there are 2^m
// cells; cell i spans [endpoints[i], endpoints[i+1]) cyclically and carries
// the binary itinerary code of its points (most significant bit first).
struct CylinderPartition {
    int level = 0;
    double fixed_point = 0.0;
    std::vector<double> endpoints;  // sorted, in [0,1)
    std::vector<std::uint32_t> codes;

    std::size_t cell_count() const { return endpoints.size(); }
    double cell_midpoint(std::size_t i) const;
    double cell_length(std::size_t i) const;
};

// Masses of the measure of maximal entropy on partition cells: 2^-m each
// for a two-full-branch degree-2 map.
struct MMEWeights {
    std::vector<double> masses;
};

struct ParryReport {
    double eigenvalue = 0.0;
    std::vector<double> masses;
    int iterations = 0;
};

CylinderPartition cylinder_partition(const PiecewiseLinearCircleMap& map, int level);
CylinderPartition cylinder_partition(const SmoothCircleMap& map, int level);

MMEWeights mme_cell_masses(const CylinderPartition& partition);

// Builds the 0/1 cell transition matrix and runs power iteration on it and
// its transpose; reports the Perron eigenvalue (2 for these maps) and the
// stationary masses l_i r_i. Throws error(errc::not_markov) when cell images
// do not align with cells.
ParryReport parry_check(const PiecewiseLinearCircleMap& map, int level);
ParryReport parry_check_with_partition(const PiecewiseLinearCircleMap& map,
                                       const std::vector<double>& endpoints);

// sum over level-m cells of 2^-m log f'(cell midpoint): exact for
// piecewise-linear maps once every kink is a cell endpoint, convergent in
// the level for smooth maps. Enumerates cells depth-first in O(level) memory.
double lambda_max_by_cylinders(const PiecewiseLinearCircleMap& map, int level);
double lambda_max_by_cylinders(const SmoothCircleMap& map, int level);

// A point of the depth-m cylinder selected by `bits` (itinerary, index 0
// applied first).
double mme_point_from_bits(const PiecewiseLinearCircleMap& map, const std::vector<int>& bits);
double mme_point_from_bits(const SmoothCircleMap& map, const std::vector<int>& bits);

// Draws a uniform random itinerary of the given depth; the returned point is
// distributed within one cell diameter of the measure of maximal entropy.
double sample_mme_point(const PiecewiseLinearCircleMap& map, int depth, std::uint64_t seed);
double sample_mme_point(const SmoothCircleMap& map, int depth, std::uint64_t seed);

}  // namespace flexmap
