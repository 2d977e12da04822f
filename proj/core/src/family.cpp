#include "flexmap/family.hpp"

#include <cmath>
#include <string>

#include "flexmap/errors.hpp"

namespace flexmap {

FamilyParams FamilyParams::make(int n, double u, int k, double v) {
    return make_split(n, UnitSplit::from_value(u), k, UnitSplit::from_value(v));
}

FamilyParams FamilyParams::make_split(int n, UnitSplit u, int k, UnitSplit v) {
    FamilyParams p{n, u, k, v};
    p.validate();
    return p;
}

namespace {

void validate_unit(const UnitSplit& s, const char* name) {
    if (!(s.complement > 0.0) || !(s.complement <= 0.5)) {
        throw error(errc::invalid_parameter,
                    std::string(name) + " must lie in [1/2, 1): complement " +
                        std::to_string(s.complement) + " out of (0, 1/2]");
    }
    // value + complement == 1 up to one rounding unit of 1
    const double drift = std::abs((1.0 - s.value) - s.complement);
    if (drift > 0x1p-52) {
        throw error(errc::invalid_parameter,
                    std::string(name) + ": value/complement pair is inconsistent");
    }
}

}  // namespace

void FamilyParams::validate() const {
    if (n < 2 || k < 2) {
        throw error(errc::invalid_parameter, "family parameters require n >= 2 and k >= 2");
    }
    if (n > 1000 || k > 1000) {
        throw error(errc::invalid_parameter, "family parameters n, k out of supported range");
    }
    validate_unit(u, "u");
    validate_unit(v, "v");
}

double family_delta(const FamilyParams& p) { return std::ldexp(p.u.value, -p.n); }

double family_epsilon(const FamilyParams& p) { return std::ldexp(p.v.value, -p.k); }

std::array<Interval, 7> family_intervals(const FamilyParams& p) {
    const double delta = family_delta(p);
    const double eps = family_epsilon(p);
    const double inv2n = std::ldexp(1.0, -p.n);
    const double inv2k = std::ldexp(1.0, -p.k);
    return {Interval{0.0, delta},
            Interval{delta, inv2n},
            Interval{inv2n, 0.5 - inv2k},
            Interval{0.5 - inv2k, 0.5 - eps},
            Interval{0.5 - eps, 0.5},
            Interval{0.5, 1.0 - inv2k},
            Interval{1.0 - inv2k, 1.0}};
}

}  // namespace flexmap
