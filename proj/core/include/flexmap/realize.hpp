#pragma once

#include <vector>

#include "flexmap/exponents.hpp"
#include "flexmap/family.hpp"

namespace flexmap {

struct NChoice {
    int n = 2;
    UnitSplit u;  // probe value u_N; may sit closer to 1 than a buildable map allows
};

struct BracketStep {
    double v_lo = 0.0;
    double v_hi = 0.0;
    double f_mid = 0.0;
};

struct RealizationResult {
    FamilyParams params;
    ExponentPair achieved;
    double residual_abs = 0.0;  // |lambda_abs - a|
    double residual_max = 0.0;  // |lambda_max - b|
    int iterations = 0;
    std::vector<BracketStep> bracket_history;
};

// Smallest K >= 2 with (1 - 2^-K) log 2 > a, so the u = 1/2 slice keeps
// lambda_abs above a for every v.
int choose_K(double a);

// Smallest N >= 2 (capped) whose probe u_N = u_from_lambda_max(N,
// log 2 + (b - log 2)/2) pushes lambda_abs_ubar below a/2.
NChoice choose_N(double a, double b, int max_n = 40);

// Exact inversion of the separable lambda_max constraint: the unique u with
// lambda_max(n, u, k, v) = b. Throws error(errc::infeasible) when even
// u = 1/2 overshoots the target.
UnitSplit solve_u_given_v(int n, int k, const UnitSplit& v, double b);

// Finds family parameters with lambda_abs = a and lambda_max = b for
// 0 < a < log 2 < b: lambda_max is absorbed exactly by solve_u_given_v and
// the remaining one-dimensional equation in v is bracketed and bisected.
RealizationResult realize(double a, double b, double tol = 1e-10);

}  // namespace flexmap
