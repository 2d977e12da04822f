#pragma once

#include "flexmap/family.hpp"

namespace flexmap {

struct ExponentPair {
    double lambda_abs = 0.0;
    double lambda_max = 0.0;
};

// W(p) = log(1/(4 p (1-p))) >= 0: the amount by which the log-slope sum of a
// split branch pair {1/p, 1/(1-p)} exceeds log 4. Zero exactly at p = 1/2.
double log_slope_excess(const UnitSplit& p);
// Inverse of the above on [1/2, 1); w <= 0 maps to 1/2. The complement is
// produced without cancellation.
UnitSplit unit_from_log_slope_excess(double w);

// Closed-form exponent w.r.t. the measure of maximal entropy:
// log 2 + W(u)/2^(n+1) + W(v)/2^(k+1).
double lambda_max_closed(const FamilyParams& p);

// Closed-form exponent w.r.t. the absolutely continuous measure. Also
// evaluates the density-integral route and insists both agree to 1e-12.
double lambda_abs_closed(const FamilyParams& p);

// Independent route: integral of q log|f'| against the exact invariant
// density over the map's branches.
double lambda_abs_density_route(const FamilyParams& p);

// Boundary slice u = 1/2 (independent of n).
double lambda_abs_vslice(int k, const UnitSplit& v);
double lambda_max_vslice(int k, const UnitSplit& v);

// Boundary slice v = 1/2 (independent of k).
double lambda_abs_ubar(int n, const UnitSplit& u);
double lambda_max_ubar(int n, const UnitSplit& u);

// Numerator y(u) of d lambda_abs_ubar / du; y(1/2) == 0 exactly and
// y(u) < 0 on (1/2, 1).
double ubar_slope_numerator(int n, const UnitSplit& u);
// y(u) / (1 + 2(1-u)(2^n - 1))^2, strictly negative on (1/2, 1).
double dlambda_abs_du(int n, const UnitSplit& u);

// Inverts lambda_max_ubar(n, .) at a target >= log 2.
UnitSplit u_from_lambda_max(int n, double target);

// Both closed forms; throws error(errc::invariant_violation) if the chain
// 0 < lambda_abs <= log 2 <= lambda_max fails beyond 1e-12 slack.
ExponentPair exponent_pair(const FamilyParams& p);

}  // namespace flexmap
