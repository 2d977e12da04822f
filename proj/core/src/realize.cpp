#include "flexmap/realize.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "flexmap/errors.hpp"

namespace flexmap {

namespace {

constexpr double kLog2 = std::numbers::ln2;

void check_targets(double a, double b) {
    if (!(a > 0.0) || !(a < kLog2) || !(b > kLog2) || !std::isfinite(b)) {
        throw error(errc::invalid_targets,
                    "targets must satisfy 0 < a < log 2 < b (log 2 = 0.693147...), got a=" +
                        std::to_string(a) + " b=" + std::to_string(b));
    }
}

}  // namespace

int choose_K(double a) {
    if (!(a > 0.0) || !(a < kLog2)) {
        throw error(errc::invalid_targets, "choose_K needs 0 < a < log 2");
    }
    int k = 2;
    while (!((1.0 - std::ldexp(1.0, -k)) * kLog2 > a)) {
        ++k;
        if (k > 64) throw error(errc::resource_limit, "choose_K exceeded its cap");
    }
    return k;
}

NChoice choose_N(double a, double b, int max_n) {
    check_targets(a, b);
    const double alpha = 0.5 * (b - kLog2);
    for (int n = 2; n <= max_n; ++n) {
        const UnitSplit u = u_from_lambda_max(n, kLog2 + alpha);
        if (lambda_abs_ubar(n, u) < 0.5 * a) return {n, u};
    }
    throw error(errc::resource_limit, "choose_N exceeded n cap " + std::to_string(max_n));
}

UnitSplit solve_u_given_v(int n, int k, const UnitSplit& v, double b) {
    const double w_u = std::ldexp(b - kLog2, n + 1) - std::ldexp(log_slope_excess(v), n - k);
    if (w_u < -1e-9) {
        throw error(errc::infeasible,
                    "lambda_max target unreachable: the v-branches already exceed it");
    }
    return unit_from_log_slope_excess(w_u);
}

RealizationResult realize(double a, double b, double tol) {
    check_targets(a, b);
    if (!(tol >= 1e-12)) {
        throw error(errc::invalid_targets, "tolerance below 1e-12 is not resolvable");
    }

    const int K = choose_K(a);
    int N = choose_N(a, b).n;

    RealizationResult result;
    const int max_retries = 6;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        // Bisect in w = W(v), the log-slope excess of the v-branch pair; v
        // and its complement are recovered exactly at every probe. w = 0 is
        // the u-slice endpoint, w_hi drives u(v) down to 1/2.
        const double w_hi = std::ldexp(b - kLog2, K + 1);
        auto probe = [&](double w) {
            const UnitSplit v = unit_from_log_slope_excess(w);
            const UnitSplit u = solve_u_given_v(N, K, v, b);
            return FamilyParams{N, u, K, v};
        };
        auto objective = [&](double w) { return lambda_abs_closed(probe(w)) - a; };

        double w_lo_bracket = 0.0, w_hi_bracket = 0.0;
        bool found = false;
        for (int points : {64, 128}) {
            double prev_w = 0.0;
            double prev_f = objective(0.0);
            for (int i = 1; i <= points; ++i) {
                const double w = w_hi * static_cast<double>(i) / points;
                const double f = objective(w);
                if (prev_f <= 0.0 && f >= 0.0) {
                    w_lo_bracket = prev_w;
                    w_hi_bracket = w;
                    found = true;
                    break;
                }
                prev_w = w;
                prev_f = f;
            }
            if (found) break;
        }
        if (!found) {
            ++N;
            continue;
        }

        double lo = w_lo_bracket, hi = w_hi_bracket;
        double f_lo = objective(lo);
        if (std::abs(f_lo) <= tol) hi = lo;
        int it = 0;
        double w_mid = 0.5 * (lo + hi), f_mid = 0.0;
        for (; it < 200; ++it) {
            w_mid = 0.5 * (lo + hi);
            f_mid = objective(w_mid);
            {
                const UnitSplit v_lo = unit_from_log_slope_excess(lo);
                const UnitSplit v_hi = unit_from_log_slope_excess(hi);
                result.bracket_history.push_back({v_lo.value, v_hi.value, f_mid});
            }
            if (std::abs(f_mid) <= tol) break;
            if (f_mid < 0.0) lo = w_mid; else hi = w_mid;
            if (!(hi - lo > 0.0) || (hi - lo) <= 1e-18 * std::max(1.0, hi)) break;
        }
        if (std::abs(f_mid) > tol) {
            result.bracket_history.clear();
            ++N;
            continue;
        }

        result.params = probe(w_mid);
        result.achieved = exponent_pair(result.params);
        result.residual_abs = std::abs(result.achieved.lambda_abs - a);
        result.residual_max = std::abs(result.achieved.lambda_max - b);
        result.iterations = it + 1;
        return result;
    }
    throw error(errc::no_bracket,
                "no sign change for lambda_abs = " + std::to_string(a) +
                    " after retries (final n = " + std::to_string(N) + ", k = " +
                    std::to_string(K) + ")");
}

}  // namespace flexmap
