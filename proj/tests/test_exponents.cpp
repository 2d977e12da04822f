#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flexmap/errors.hpp"
#include "flexmap/exponents.hpp"
#include "support/test_support.hpp"

using namespace flexmap;
using flexmap::testing::kLambdaAbsExample;
using flexmap::testing::kLambdaMaxExample;
using flexmap::testing::kLog2;
using flexmap::testing::ParamGen;

namespace {
UnitSplit U(double x) { return UnitSplit::from_value(x); }
}

TEST_CASE("doubling point gives (log 2, log 2) exactly-ish") {
    for (int n = 2; n <= 10; ++n) {
        for (int k = 2; k <= 10; ++k) {
            const auto pair = exponent_pair(FamilyParams::make(n, 0.5, k, 0.5));
            CHECK(std::abs(pair.lambda_abs - kLog2) <= 1e-14);
            CHECK(std::abs(pair.lambda_max - kLog2) <= 1e-14);
        }
    }
}

TEST_CASE("worked example values") {
    const auto p = FamilyParams::make(2, 0.75, 2, 0.75);
    CHECK(std::abs(lambda_max_closed(p) - kLambdaMaxExample) <= 1e-15);
    CHECK(std::abs(lambda_abs_closed(p) - kLambdaAbsExample) <= 1e-15);
    const auto pair = exponent_pair(p);
    CHECK(pair.lambda_abs < kLog2);
    CHECK(pair.lambda_max > kLog2);
}

TEST_CASE("dual route: closed form equals density integral") {
    ParamGen gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = gen.next(2, 8);
        CHECK(std::abs(lambda_abs_closed(p) - lambda_abs_density_route(p)) <= 1e-12);
    }
}

TEST_CASE("slice consistency") {
    const int ns[] = {2, 5, 9};
    for (int n : ns) {
        for (int k = 2; k <= 6; ++k) {
            for (double v = 0.5; v < 1.0; v += 0.07) {
                const auto p = FamilyParams::make(n, 0.5, k, v);
                CHECK(std::abs(lambda_abs_closed(p) - lambda_abs_vslice(k, U(v))) <= 1e-12);
                CHECK(std::abs(lambda_max_closed(p) - lambda_max_vslice(k, U(v))) <= 1e-12);
            }
            for (double u = 0.5; u < 1.0; u += 0.07) {
                const auto p = FamilyParams::make(n, u, k, 0.5);
                CHECK(std::abs(lambda_abs_closed(p) - lambda_abs_ubar(n, U(u))) <= 1e-12);
                CHECK(std::abs(lambda_max_closed(p) - lambda_max_ubar(n, U(u))) <= 1e-12);
            }
        }
    }
}

TEST_CASE("v-slice bounds and limits") {
    CHECK(lambda_abs_vslice(3, U(0.5)) == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(lambda_max_vslice(3, U(0.5)) == kLog2);
    for (int k = 2; k <= 7; ++k) {
        const double floor_bound = (1.0 - std::ldexp(1.0, -k)) * kLog2;
        double prev_max = kLog2;
        for (double v = 0.5; v < 0.999999; v = 0.5 + (v - 0.5) * 1.9 + 0.01) {
            const double la = lambda_abs_vslice(k, U(v));
            CHECK(la <= kLog2 + 1e-15);
            CHECK(la >= floor_bound - 1e-15);
            const double lm = lambda_max_vslice(k, U(v));
            CHECK(lm >= prev_max - 1e-15);  // monotone growth in v
            prev_max = lm;
        }
    }
    // lambda_max_vslice grows without bound as v -> 1
    CHECK(lambda_max_vslice(2, UnitSplit::from_complement(1e-200)) > 50.0);
}

TEST_CASE("ubar slice: monotone decrease, limits") {
    CHECK(lambda_abs_ubar(4, U(0.5)) == doctest::Approx(kLog2).epsilon(1e-15));
    for (int n : {2, 5, 9}) {
        double prev = lambda_abs_ubar(n, U(0.5));
        for (double u = 0.51; u < 1.0 - 1e-6; u += 0.01) {
            const double cur = lambda_abs_ubar(n, U(u));
            CHECK(cur < prev);
            prev = cur;
        }
    }
    // tends to 0 as u -> 1, on the slice and in the full closed form
    CHECK(lambda_abs_ubar(2, UnitSplit::from_complement(1e-12)) < 1e-9);
    const auto p = FamilyParams::make_split(2, UnitSplit::from_complement(1e-12), 2,
                                            UnitSplit::from_value(0.5));
    CHECK(lambda_abs_closed(p) < 1e-9);
}

TEST_CASE("derivative numerator y: zero at 1/2, negative beyond, matches FD") {
    for (int n : {2, 5, 9}) {
        CHECK(ubar_slope_numerator(n, U(0.5)) == 0.0);
        for (double u = 0.5005; u < 0.9995; u += 0.0007) {
            CHECK(ubar_slope_numerator(n, U(u)) < 0.0);
            const double d = dlambda_abs_du(n, U(u));
            CHECK(d < 0.0);
            const double h = 1e-6;
            const double fd =
                (lambda_abs_ubar(n, U(u + h)) - lambda_abs_ubar(n, U(u - h))) / (2.0 * h);
            CHECK(std::abs(d - fd) <= 1e-4 * std::abs(d));
        }
    }
}

TEST_CASE("quadratic inversion of lambda_max_ubar") {
    CHECK(u_from_lambda_max(3, kLog2).value == 0.5);
    CHECK(u_from_lambda_max(3, kLog2 - 1.0).value == 0.5);  // clamped at the slice bottom

    // Start outside the quadratically flat region around u = 1/2, where a
    // double-valued lambda_max pins u only to ~sqrt(ulp).
    for (int n : {2, 3, 6}) {
        for (double u = 0.5001; u <= 1.0 - 1e-8; u = 0.5 + (u - 0.5) * 2.2) {
            const double target = lambda_max_ubar(n, U(u));
            const UnitSplit back = u_from_lambda_max(n, target);
            CHECK(std::abs(back.value - u) <= 1e-10);
            CHECK(std::abs(lambda_max_ubar(n, back) - target) <= 1e-12);
        }
    }

    // the two algebraic forms of the radicand agree
    for (int n : {2, 4}) {
        for (double t = 1e-6; t < 3.0; t += 0.1) {
            const double target = kLog2 + t;
            const UnitSplit via_excess = u_from_lambda_max(n, target);
            const double pw = std::ldexp(1.0, n + 1);
            const double direct_s = std::sqrt(1.0 - std::exp(-pw * (target - kLog2)));
            const double quad_s =
                std::sqrt(1.0 - 4.0 * std::exp(2.0 * (std::ldexp(1.0, n) - 1.0) * kLog2 -
                                               pw * target));
            CHECK(std::abs(direct_s - quad_s) <= 1e-12);
            CHECK(std::abs((2.0 * via_excess.value - 1.0) - direct_s) <= 1e-12);
        }
    }
}

TEST_CASE("log_slope_excess round trip keeps complements exact") {
    for (double w : {0.0, 1e-12, 0.5, 5.0, 40.0, 200.0}) {
        const UnitSplit s = unit_from_log_slope_excess(w);
        CHECK(s.complement > 0.0);
        CHECK(std::abs(log_slope_excess(s) - w) <= 1e-10 * std::max(1.0, w));
    }
}

TEST_CASE("property: inequality chain over random parameters") {
    ParamGen gen(999);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pair = exponent_pair(gen.next(2, 9));
        CHECK(pair.lambda_abs > 0.0);
        CHECK(pair.lambda_abs <= kLog2 + 1e-12);
        CHECK(pair.lambda_max >= kLog2 - 1e-12);
    }
}

TEST_CASE("monotonicity of lambda_max_closed in u and v") {
    for (int n : {2, 4}) {
        for (int k : {2, 5}) {
            double prev = -1.0;
            for (double u = 0.5; u < 0.999; u += 0.005) {
                const double cur = lambda_max_closed(FamilyParams::make(n, u, k, 0.77));
                CHECK(cur > prev);
                prev = cur;
            }
            prev = -1.0;
            for (double v = 0.5; v < 0.999; v += 0.005) {
                const double cur = lambda_max_closed(FamilyParams::make(n, 0.77, k, v));
                CHECK(cur > prev);
                prev = cur;
            }
        }
    }
}
