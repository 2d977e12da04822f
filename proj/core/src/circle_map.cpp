#include "flexmap/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flexmap/errors.hpp"

namespace flexmap {

namespace {

constexpr double kContinuityTol = 1e-12;
constexpr double kDegreeTol = 1e-9;

double fractional(double y) {
    double f = y - std::floor(y);
    return f < 1.0 ? f : 0.0;
}

}  // namespace

PiecewiseLinearCircleMap PiecewiseLinearCircleMap::from_anchored(std::vector<double> breakpoints,
                                                                 std::vector<double> slopes,
                                                                 std::vector<double> lift_values) {
    // Drop empty segments, then merge adjacent segments with equal nominal
    // slope so the representation is the minimal one for the function.
    PiecewiseLinearCircleMap m;
    const std::size_t count = slopes.size();
    std::vector<double> nominal;
    for (std::size_t i = 0; i < count; ++i) {
        const double lo = breakpoints[i];
        const double hi = (i + 1 < count) ? breakpoints[i + 1] : 1.0;
        if (!(lo < hi)) continue;
        if (!nominal.empty() && nominal.back() == slopes[i]) continue;
        m.breaks_.push_back(lo);
        nominal.push_back(slopes[i]);
        m.lifts_.push_back(lift_values[i]);
    }
    m.lifts_.push_back(lift_values[count]);
    // The lift anchors are authoritative: the segment slope is the exact
    // rise over run between them. Where breakpoints carry rounding, a
    // steep nominal slope would otherwise miss the far anchor by far more
    // than the anchor's own rounding.
    m.slopes_.resize(m.breaks_.size());
    for (std::size_t i = 0; i < m.breaks_.size(); ++i) {
        const double hi = (i + 1 < m.breaks_.size()) ? m.breaks_[i + 1] : 1.0;
        m.slopes_[i] = (m.lifts_[i + 1] - m.lifts_[i]) / (hi - m.breaks_[i]);
    }
    m.check_valid();
    return m;
}

PiecewiseLinearCircleMap PiecewiseLinearCircleMap::from_breakpoints(std::vector<double> breakpoints,
                                                                    std::vector<double> slopes,
                                                                    double value_at_zero) {
    if (breakpoints.empty() || breakpoints.front() != 0.0) {
        throw error(errc::invalid_parameter, "breakpoints must start at 0");
    }
    if (breakpoints.size() != slopes.size()) {
        throw error(errc::invalid_parameter, "need one slope per breakpoint interval");
    }
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end())) {
        throw error(errc::invalid_parameter, "breakpoints must be ascending");
    }
    if (breakpoints.back() >= 1.0) {
        throw error(errc::invalid_parameter, "breakpoints must lie in [0,1)");
    }
    std::vector<double> lifts(slopes.size() + 1);
    lifts[0] = value_at_zero;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double hi = (i + 1 < slopes.size()) ? breakpoints[i + 1] : 1.0;
        lifts[i + 1] = lifts[i] + slopes[i] * (hi - breakpoints[i]);
    }
    return from_anchored(std::move(breakpoints), std::move(slopes), std::move(lifts));
}

PiecewiseLinearCircleMap PiecewiseLinearCircleMap::doubling_map() {
    return from_breakpoints({0.0}, {2.0}, 0.0);
}

void PiecewiseLinearCircleMap::check_valid() {
    if (slopes_.empty()) {
        throw error(errc::invalid_parameter, "map has no segments");
    }
    for (double s : slopes_) {
        if (!(s > 1.0)) {
            throw error(errc::invalid_parameter,
                        "map is not expanding: slope " + std::to_string(s) + " <= 1");
        }
    }
    const double span = lifts_.back() - lifts_.front();
    const double rounded = std::round(span);
    if (std::abs(span - rounded) > kDegreeTol || rounded < 1.0) {
        throw error(errc::non_integer_degree,
                    "lift rise " + std::to_string(span) + " is not a positive integer");
    }
    degree_ = static_cast<int>(rounded);
    if (continuity_residual() > kContinuityTol) {
        throw error(errc::invalid_parameter, "map is discontinuous at a breakpoint");
    }
}

double PiecewiseLinearCircleMap::continuity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        const double hi = (i + 1 < slopes_.size()) ? breaks_[i + 1] : 1.0;
        const double reach = lifts_[i] + slopes_[i] * (hi - breaks_[i]);
        worst = std::max(worst, std::abs(reach - lifts_[i + 1]));
    }
    return worst;
}

std::size_t PiecewiseLinearCircleMap::segment_index(double x) const {
    if (!(x >= 0.0) || !(x < 1.0)) {
        throw error(errc::domain, "point " + std::to_string(x) + " outside [0,1)");
    }
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double PiecewiseLinearCircleMap::lift(double x) const {
    const std::size_t i = segment_index(x);
    return lifts_[i] + slopes_[i] * (x - breaks_[i]);
}

double PiecewiseLinearCircleMap::value(double x) const { return fractional(lift(x)); }

double PiecewiseLinearCircleMap::derivative(double x) const { return slopes_[segment_index(x)]; }

double PiecewiseLinearCircleMap::min_slope() const {
    return *std::min_element(slopes_.begin(), slopes_.end());
}

double PiecewiseLinearCircleMap::invert_lift_on_segment(std::size_t i, double target) const {
    double x = breaks_[i] + (target - lifts_[i]) / slopes_[i];
    const double hi = (i + 1 < slopes_.size()) ? breaks_[i + 1] : 1.0;
    if (x < breaks_[i]) x = breaks_[i];
    if (x >= hi) x = std::nextafter(hi, breaks_[i]);
    return x;
}

std::vector<double> PiecewiseLinearCircleMap::preimages(double y) const {
    if (!(y >= 0.0) || !(y < 1.0)) {
        throw error(errc::domain, "preimage target outside [0,1)");
    }
    // Segment lift images tile [F(0), F(1)) exactly, so scanning integer
    // translates of y per segment finds each preimage exactly once.
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(degree_));
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        const double lo = lifts_[i];
        const double hi = lifts_[i + 1];
        for (double t = std::ceil(lo - y); y + t < hi; t += 1.0) {
            xs.push_back(invert_lift_on_segment(i, y + t));
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

bool family_map_buildable(const FamilyParams& params) {
    if (!(1.0 / params.u.value > 1.0) || !(1.0 / params.v.value > 1.0)) return false;
    // the branch between 1/2 - 2^-k and 1/2 - eps must retain positive width
    // after rounding near 1/2, or its lift anchor has nowhere to live
    const double eps = family_epsilon(params);
    return 0.5 - eps > 0.5 - std::ldexp(1.0, -params.k);
}

PiecewiseLinearCircleMap build_family_map(const FamilyParams& params) {
    params.validate();
    const double delta = family_delta(params);
    const double eps = family_epsilon(params);
    const double inv2n = std::ldexp(1.0, -params.n);
    const double inv2k = std::ldexp(1.0, -params.k);

    if (!family_map_buildable(params)) {
        throw error(errc::invalid_parameter,
                    "u or v complement too small for double breakpoints");
    }

    // Lift values at the nominal breakpoints are known dyadics; anchoring on
    // them keeps the degree exactly 2 and continuity at rounding level.
    const std::vector<double> breakpoints = {0.0,       delta,       inv2n,
                                             0.5 - inv2k, 0.5 - eps, 0.5};
    const std::vector<double> slopes = {1.0 / params.u.value, 1.0 / params.u.complement, 2.0,
                                        1.0 / params.v.complement, 1.0 / params.v.value, 2.0};
    const std::vector<double> lifts = {0.0,          inv2n, 2.0 * inv2n, 1.0 - 2.0 * inv2k,
                                       1.0 - inv2k,  1.0,   2.0};
    return PiecewiseLinearCircleMap::from_anchored(breakpoints, slopes, lifts);
}

}  // namespace flexmap
