#pragma once

#include <cstddef>
#include <vector>

#include "flexmap/circle_map.hpp"
#include "flexmap/density.hpp"
#include "flexmap/family.hpp"

namespace flexmap {

// Derivative profile used across a corner: cubic smoothstep gives a C^1 map,
// quintic gives C^2.
enum class BlendProfile { cubic, quintic };

// Expanding degree-2 circle map obtained by mollifying a piecewise-linear
// map: identical to it outside alpha-neighbourhoods of the corners, with the
// derivative sweeping monotonically from the left slope to the right slope
// across each neighbourhood. Represented, like the linear case, by a lift.
class SmoothCircleMap {
public:
    struct Piece {
        double x_lo = 0.0;
        double x_hi = 1.0;
        double lift_lo = 0.0;
        bool blend = false;
        double slope = 2.0;    // linear pieces
        double s_left = 2.0;   // blend pieces
        double s_right = 2.0;
        double t_lo = 0.0;     // profile parameter at x_lo
        double span = 0.0;     // 2 * alpha
    };

    double value(double x) const;
    double lift(double x) const;
    double derivative(double x) const;
    int degree() const { return degree_; }
    std::vector<double> preimages(double y) const;

    double alpha() const { return alpha_; }
    BlendProfile profile() const { return profile_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    // Lift at piece starts plus a final entry for x = 1.
    const std::vector<double>& lift_bounds() const { return lift_bounds_; }

    // Solves lift(x) = target on piece i (safeguarded Newton on blends).
    double invert_lift_on_piece(std::size_t i, double target) const;

    double min_derivative() const;
    double continuity_residual() const;
    // Worst derivative mismatch across piece boundaries (C^1 check).
    double c1_residual() const;

private:
    SmoothCircleMap() = default;

    std::size_t piece_index(double x) const;
    double piece_lift(const Piece& p, double x) const;
    double piece_derivative(const Piece& p, double x) const;

    std::vector<Piece> pieces_;
    std::vector<double> lift_bounds_;
    int degree_ = 0;
    double alpha_ = 0.0;
    BlendProfile profile_ = BlendProfile::cubic;

    friend SmoothCircleMap smooth_map(const PiecewiseLinearCircleMap&, double, BlendProfile);
};

// Mollifies every corner of `map` with radius alpha. Throws
// error(errc::alpha_too_large) when neighbourhoods would overlap.
SmoothCircleMap smooth_map(const PiecewiseLinearCircleMap& map, double alpha,
                           BlendProfile profile = BlendProfile::cubic);

// The fixed point near 0 (the blend at the corner 0 displaces it by at most
// alpha); |f(x) - x| <= 1e-14 at the returned point.
double find_fixed_point(const SmoothCircleMap& map);

struct SweepConfig {
    std::vector<double> alphas;   // positive blend radii; an alpha=0 row is
                                  // always emitted first from closed forms
    int cylinder_level = 20;
    int ulam_bins = 1 << 14;
    double ulam_tol = 1e-12;
    BlendProfile profile = BlendProfile::cubic;
};

struct SweepRow {
    double alpha = 0.0;
    double lambda_abs_est = 0.0;
    double lambda_max_est = 0.0;
};

// Exponent-convergence study in alpha: lambda_max via cylinder sums,
// lambda_abs by integrating log f' against the Ulam stationary density.
std::vector<SweepRow> alpha_sweep(const FamilyParams& params, const SweepConfig& config);

// Integral of q(x) log f'(x) dx; exact off blends, Simpson across them.
double integrate_log_derivative(const StepDensity& q, const SmoothCircleMap& map);

}  // namespace flexmap
