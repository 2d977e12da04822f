#pragma once

#include <vector>

#include "flexmap/circle_map.hpp"
#include "flexmap/family.hpp"

namespace flexmap {

// Piecewise-constant probability density on [0,1): value values[i] holds on
// [bounds[i], bounds[i+1]) with bounds[0] == 0 and an implicit final edge
// at 1. Probability densities integrate to 1; transfer images of arbitrary
// step functions are also represented by this type.
struct StepDensity {
    std::vector<double> bounds;
    std::vector<double> values;

    static StepDensity uniform() { return {{0.0}, {1.0}}; }

    double integral() const;
    double value_at(double x) const;  // right-continuous
    void check_probability() const;   // non-negative, integral within 1e-12 of 1
};

double l1_distance(const StepDensity& a, const StepDensity& b);
double sup_distance(const StepDensity& a, const StepDensity& b);

// The plateau constants of the family's invariant density, a_1..a_7 in
// segment order (a_2 = a_1, a_3..a_6 equal, a_7 = 4 a_1 (1-u) v).
struct FamilyDensityCoefficients {
    double a1, a2, a3, a4, a5, a6, a7;
};
FamilyDensityCoefficients family_density_coefficients(const FamilyParams& p);

// Exact invariant density of the family map: a1 on [0, 2^-n),
// 2 a1 (1-u) on [2^-n, 1-2^-k), 4 a1 (1-u) v on [1-2^-k, 1).
StepDensity exact_invariant_density(const FamilyParams& p);

// Transfer (Perron-Frobenius) image (Pq)(x) = sum_{f(y)=x} q(y)/f'(y),
// computed exactly on the common refinement; no quadrature.
StepDensity transfer_apply(const PiecewiseLinearCircleMap& map, const StepDensity& q);

// Integral of q(x) log f'(x) dx, exact for piecewise-linear maps.
double integrate_log_derivative(const StepDensity& q, const PiecewiseLinearCircleMap& map);

}  // namespace flexmap
