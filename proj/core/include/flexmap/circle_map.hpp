#pragma once

#include <cstddef>
#include <vector>

#include "flexmap/family.hpp"

namespace flexmap {

// Continuous piecewise-linear expanding circle map of integer degree d >= 1,
// represented by its lift F: [0,1] -> R. Breakpoints start at 0; segment i
// covers [x_i, x_{i+1}) with constant slope > 1, F is continuous and
// F(1) = F(0) + d. The circle map is x |-> F(x) mod 1.
class PiecewiseLinearCircleMap {
public:
    // Generic construction from breakpoints (first must be 0), one slope per
    // segment and the lift value at 0. Lift values at the remaining
    // breakpoints accumulate slope*length. Adjacent collinear segments are
    // merged and zero-length segments dropped.
    static PiecewiseLinearCircleMap from_breakpoints(std::vector<double> breakpoints,
                                                     std::vector<double> slopes,
                                                     double value_at_zero = 0.0);

    // x |-> 2x mod 1.
    static PiecewiseLinearCircleMap doubling_map();

    double value(double x) const;       // F(x) mod 1, right-continuous
    double lift(double x) const;        // F(x)
    double derivative(double x) const;  // slope of the segment containing x
    int degree() const { return degree_; }

    // All solutions of value(x) == y, ascending; exactly degree() of them.
    std::vector<double> preimages(double y) const;

    std::size_t segment_count() const { return slopes_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& slopes() const { return slopes_; }
    // Lift values at breakpoints; one extra entry for x = 1.
    const std::vector<double>& lift_values() const { return lifts_; }

    double min_slope() const;
    // max |F(x_i^-) - F(x_i)| over interior breakpoints plus the wrap seam.
    double continuity_residual() const;

    std::size_t segment_index(double x) const;
    // Solves F(x) = target on segment i; target must be in the segment's
    // lift range.
    double invert_lift_on_segment(std::size_t i, double target) const;

private:
    PiecewiseLinearCircleMap() = default;
    static PiecewiseLinearCircleMap from_anchored(std::vector<double> breakpoints,
                                                  std::vector<double> slopes,
                                                  std::vector<double> lift_values);
    void check_valid();

    std::vector<double> breaks_;  // size m, breaks_[0] == 0
    std::vector<double> slopes_;  // size m
    std::vector<double> lifts_;   // size m+1, lifts_[m] = lifts_[0] + degree
    int degree_ = 0;

    friend PiecewiseLinearCircleMap build_family_map(const FamilyParams&);
};

// The seven-branch family map with slopes 1/u, 1/(1-u), 2, 1/(1-v), 1/v, 2
// across {0, delta, 2^-n, 1/2-2^-k, 1/2-eps, 1/2}; coincident breakpoints
// collapse and collinear neighbours merge. f(0) = 0 and degree is 2.
PiecewiseLinearCircleMap build_family_map(const FamilyParams& params);

// Double breakpoints resolve the steep branches only down to a few ulps: a
// complement below that has a valid closed-form theory but no buildable
// map. build_family_map rejects parameters failing this predicate.
bool family_map_buildable(const FamilyParams& params);

}  // namespace flexmap
