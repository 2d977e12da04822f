#pragma once

#include <array>
#include <cstdint>

namespace flexmap {

// A real x in [0,1] stored together with 1-x. Several parameter values in
// this library sit exponentially close to 1, where the complement carries
// all the relative precision; formulas read whichever side is accurate.
struct UnitSplit {
    double value = 0.5;
    double complement = 0.5;

    static UnitSplit from_value(double x) { return {x, 1.0 - x}; }
    static UnitSplit from_complement(double c) { return {1.0 - c, c}; }
};

// Parameters (n, u, k, v) selecting one map of the piecewise-linear family:
// n, k >= 2 integers, u, v in [1/2, 1). The first kink sits at delta =
// 2^-n * u and the second pair at epsilon = 2^-k * v.
struct FamilyParams {
    int n = 2;
    UnitSplit u;
    int k = 2;
    UnitSplit v;

    static FamilyParams make(int n, double u, int k, double v);
    static FamilyParams make_split(int n, UnitSplit u, int k, UnitSplit v);

    // Throws error(errc::invalid_parameter) when any type invariant fails.
    void validate() const;
};

double family_delta(const FamilyParams& p);    // 2^-n * u
double family_epsilon(const FamilyParams& p);  // 2^-k * v

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
    double length() const { return empty() ? 0.0 : hi - lo; }
};

// The seven closed-open segments I_1..I_7 cutting [0,1) at
// {delta, 2^-n, 1/2 - 2^-k, 1/2 - eps, 1/2, 1 - 2^-k}; some may be empty
// when parameters coincide. Returned in index order I_1..I_7.
std::array<Interval, 7> family_intervals(const FamilyParams& p);

}  // namespace flexmap
