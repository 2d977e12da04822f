#include "flexmap/exponents.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "flexmap/circle_map.hpp"
#include "flexmap/density.hpp"
#include "flexmap/errors.hpp"

namespace flexmap {

namespace {

constexpr double kLog2 = std::numbers::ln2;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// log of the value side, read through the complement when that is the
// accurate representation.
double log_value(const UnitSplit& p) {
    return p.complement < 0.25 ? std::log1p(-p.complement) : std::log(p.value);
}

// -(x log x + (1-x) log(1-x)), in [0, log 2]
double entropy(const UnitSplit& p) { return -(p.value * log_value(p) + xlogx(p.complement)); }

// log(2p) and log(2(1-p)) without cancellation at either end.
double log_twice_value(const UnitSplit& p) {
    return p.complement <= 0.25 ? kLog2 + std::log1p(-p.complement)
                                : std::log1p(p.value - p.complement);
}
double log_twice_complement(const UnitSplit& p) {
    return p.complement <= 0.25 ? kLog2 + std::log(p.complement)
                                : std::log1p(p.complement - p.value);
}

}  // namespace

double log_slope_excess(const UnitSplit& p) {
    if (p.complement > 0.25) {
        const double s = p.value - p.complement;  // 2p - 1, exact near 1/2
        return -std::log1p(-s * s);
    }
    return -(2.0 * kLog2 + std::log1p(-p.complement) + std::log(p.complement));
}

UnitSplit unit_from_log_slope_excess(double w) {
    if (!(w > 0.0)) return {0.5, 0.5};
    const double z = std::exp(-w);        // 4 p (1-p)
    const double s = std::sqrt(-std::expm1(-w));
    return {0.5 * (1.0 + s), z / (2.0 * (1.0 + s))};
}

double lambda_max_closed(const FamilyParams& p) {
    return kLog2 + std::ldexp(log_slope_excess(p.u), -(p.n + 1)) +
           std::ldexp(log_slope_excess(p.v), -(p.k + 1));
}

double lambda_max_vslice(int k, const UnitSplit& v) {
    return kLog2 + std::ldexp(log_slope_excess(v), -(k + 1));
}

double lambda_max_ubar(int n, const UnitSplit& u) {
    return kLog2 + std::ldexp(log_slope_excess(u), -(n + 1));
}

double lambda_abs_density_route(const FamilyParams& p) {
    const StepDensity q = exact_invariant_density(p);
    return integrate_log_derivative(q, build_family_map(p));
}

double lambda_abs_closed(const FamilyParams& p) {
    const double pow2n = std::ldexp(1.0, p.n);
    const double pow2nk = std::ldexp(1.0, p.n - p.k);  // 2^(n-k)
    const double omu = p.u.complement;
    const double denom =
        1.0 + 2.0 * omu * (pow2n - pow2nk - 1.0 + 2.0 * pow2nk * p.v.value);
    const double num = 2.0 * omu * (pow2n - 2.0 * pow2nk - 1.0 + 2.0 * pow2nk * p.v.value) * kLog2 +
                       entropy(p.u) + 2.0 * pow2nk * omu * entropy(p.v);
    const double closed = num / denom;

    // Cross-check against the density-integral route whenever the map is
    // constructible with double breakpoints (u or v rounding to 1 leaves no
    // room for the steep branch).
    if (family_map_buildable(p)) {
        const double routed = lambda_abs_density_route(p);
        if (std::abs(closed - routed) > 1e-12 * std::max(1.0, std::abs(closed))) {
            throw error(errc::invariant_violation,
                        "closed-form and density-integral exponents disagree: " +
                            std::to_string(closed) + " vs " + std::to_string(routed));
        }
    }
    return closed;
}

double lambda_abs_vslice(int k, const UnitSplit& v) {
    const double c = std::ldexp(1.0, -k);      // 2^-k
    const double t = std::ldexp(1.0, 1 - k);   // 2^(1-k)
    const double denom = 1.0 - c + t * v.value;
    const double num = (1.0 - t + t * v.value) * kLog2 + c * entropy(v);
    return num / denom;
}

double lambda_abs_ubar(int n, const UnitSplit& u) {
    const double denom = 1.0 + 2.0 * u.complement * (std::ldexp(1.0, n) - 1.0);
    return kLog2 + (entropy(u) - kLog2) / denom;
}

double ubar_slope_numerator(int n, const UnitSplit& u) {
    // y(u) = log(1-u) - (2^(n+1)-1) log u - 2(2^n-1) log 2, regrouped as
    // log(2(1-u)) - (2^(n+1)-1) log(2u) so that y(1/2) vanishes exactly.
    return log_twice_complement(u) - (std::ldexp(1.0, n + 1) - 1.0) * log_twice_value(u);
}

double dlambda_abs_du(int n, const UnitSplit& u) {
    const double denom = 1.0 + 2.0 * u.complement * (std::ldexp(1.0, n) - 1.0);
    return ubar_slope_numerator(n, u) / (denom * denom);
}

UnitSplit u_from_lambda_max(int n, double target) {
    return unit_from_log_slope_excess(std::ldexp(target - kLog2, n + 1));
}

ExponentPair exponent_pair(const FamilyParams& p) {
    const ExponentPair pair{lambda_abs_closed(p), lambda_max_closed(p)};
    const double slack = 1e-12;
    if (!(pair.lambda_abs > 0.0) || pair.lambda_abs > kLog2 + slack ||
        pair.lambda_max < kLog2 - slack) {
        throw error(errc::invariant_violation,
                    "exponent inequality chain violated: lambda_abs=" +
                        std::to_string(pair.lambda_abs) +
                        " lambda_max=" + std::to_string(pair.lambda_max));
    }
    return pair;
}

}  // namespace flexmap
