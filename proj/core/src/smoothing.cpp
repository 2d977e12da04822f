#include "flexmap/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flexmap/errors.hpp"
#include "flexmap/exponents.hpp"
#include "flexmap/markov.hpp"
#include "flexmap/ulam.hpp"

namespace flexmap {

namespace {

double fractional(double y) {
    double f = y - std::floor(y);
    return f < 1.0 ? f : 0.0;
}

// Derivative ramp sigma: [0,1] -> [0,1] with sigma(0)=0, sigma(1)=1, and its
// antiderivative Sigma. Both profiles are symmetric, Sigma(1/2) = half of
// Sigma(1) - 1/4... precisely Sigma_cubic(t) = t^3 - t^4/2.
double sigma_of(BlendProfile p, double t) {
    return p == BlendProfile::cubic ? t * t * (3.0 - 2.0 * t)
                                    : t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
double sigma_integral(BlendProfile p, double t) {
    if (p == BlendProfile::cubic) {
        return t * t * t * (1.0 - 0.5 * t);
    }
    return t * t * t * t * (2.5 + t * (-3.0 + t));
}

}  // namespace

std::size_t SmoothCircleMap::piece_index(double x) const {
    if (!(x >= 0.0) || !(x < 1.0)) {
        throw error(errc::domain, "point " + std::to_string(x) + " outside [0,1)");
    }
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.x_lo; });
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double SmoothCircleMap::piece_lift(const Piece& p, double x) const {
    const double dx = x - p.x_lo;
    if (!p.blend) return p.lift_lo + p.slope * dx;
    const double t = p.t_lo + dx / p.span;
    const double ramp = sigma_integral(profile_, t) - sigma_integral(profile_, p.t_lo);
    return p.lift_lo + p.s_left * dx + (p.s_right - p.s_left) * p.span * ramp;
}

double SmoothCircleMap::piece_derivative(const Piece& p, double x) const {
    if (!p.blend) return p.slope;
    const double t = p.t_lo + (x - p.x_lo) / p.span;
    return p.s_left + (p.s_right - p.s_left) * sigma_of(profile_, t);
}

double SmoothCircleMap::lift(double x) const { return piece_lift(pieces_[piece_index(x)], x); }

double SmoothCircleMap::value(double x) const { return fractional(lift(x)); }

double SmoothCircleMap::derivative(double x) const {
    return piece_derivative(pieces_[piece_index(x)], x);
}

double SmoothCircleMap::min_derivative() const {
    double lo = pieces_.front().blend ? std::min(pieces_.front().s_left, pieces_.front().s_right)
                                      : pieces_.front().slope;
    for (const Piece& p : pieces_) {
        lo = std::min(lo, p.blend ? std::min(p.s_left, p.s_right) : p.slope);
    }
    return lo;
}

double SmoothCircleMap::continuity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double reach = piece_lift(pieces_[i], pieces_[i].x_hi);
        worst = std::max(worst, std::abs(reach - lift_bounds_[i + 1]));
    }
    return worst;
}

double SmoothCircleMap::c1_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& cur = pieces_[i];
        const Piece& nxt = pieces_[(i + 1) % pieces_.size()];
        const double left = piece_derivative(cur, cur.x_hi);
        const double right = nxt.blend ? nxt.s_left + (nxt.s_right - nxt.s_left) *
                                                          sigma_of(profile_, nxt.t_lo)
                                       : nxt.slope;
        worst = std::max(worst, std::abs(left - right));
    }
    return worst;
}

double SmoothCircleMap::invert_lift_on_piece(std::size_t i, double target) const {
    const Piece& p = pieces_[i];
    double lo = p.x_lo;
    double hi = p.x_hi;
    if (!p.blend) {
        double x = p.x_lo + (target - p.lift_lo) / p.slope;
        if (x < lo) x = lo;
        if (x >= hi) x = std::nextafter(hi, lo);
        return x;
    }
    // safeguarded Newton; the derivative is bounded below by min slope > 1
    double x = std::clamp(p.x_lo + (target - p.lift_lo) / p.s_left, lo, hi);
    for (int it = 0; it < 100; ++it) {
        const double f = piece_lift(p, x) - target;
        if (f > 0.0) hi = x; else lo = x;
        if (std::abs(f) <= 1e-15 * (1.0 + std::abs(target))) break;
        double step = f / piece_derivative(p, x);
        double next = x - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    if (x < p.x_lo) x = p.x_lo;
    if (x >= p.x_hi) x = std::nextafter(p.x_hi, p.x_lo);
    return x;
}

std::vector<double> SmoothCircleMap::preimages(double y) const {
    if (!(y >= 0.0) || !(y < 1.0)) {
        throw error(errc::domain, "preimage target outside [0,1)");
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(degree_));
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double lo = lift_bounds_[i];
        const double hi = lift_bounds_[i + 1];
        for (double t = std::ceil(lo - y); y + t < hi; t += 1.0) {
            xs.push_back(invert_lift_on_piece(i, y + t));
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

SmoothCircleMap smooth_map(const PiecewiseLinearCircleMap& map, double alpha,
                           BlendProfile profile) {
    if (!(alpha > 0.0)) {
        throw error(errc::invalid_parameter, "blend radius must be positive");
    }
    const auto& breaks = map.breakpoints();
    const auto& slopes = map.slopes();
    const std::size_t m = slopes.size();

    std::vector<double> corners;
    if (slopes.front() != slopes.back()) corners.push_back(0.0);
    for (std::size_t i = 1; i < m; ++i) {
        if (slopes[i] != slopes[i - 1]) corners.push_back(breaks[i]);
    }

    SmoothCircleMap out;
    out.alpha_ = alpha;
    out.profile_ = profile;
    out.degree_ = map.degree();

    if (corners.empty()) {
        for (std::size_t i = 0; i < m; ++i) {
            SmoothCircleMap::Piece p;
            p.x_lo = breaks[i];
            p.x_hi = i + 1 < m ? breaks[i + 1] : 1.0;
            p.lift_lo = map.lift_values()[i];
            p.slope = slopes[i];
            out.pieces_.push_back(p);
            out.lift_bounds_.push_back(p.lift_lo);
        }
        out.lift_bounds_.push_back(map.lift_values()[m]);
        return out;
    }

    double min_gap = 1.0;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const double next = i + 1 < corners.size() ? corners[i + 1] : corners[0] + 1.0;
        min_gap = std::min(min_gap, next - corners[i]);
    }
    if (!(alpha < 0.5 * min_gap)) {
        throw error(errc::alpha_too_large,
                    "blend radius " + std::to_string(alpha) +
                        " overlaps neighbouring corners (min gap " + std::to_string(min_gap) + ")");
    }

    const double span = 2.0 * alpha;
    const double sigma_half = sigma_integral(profile, 0.5);
    const bool wrap = corners.front() == 0.0;

    auto left_slope_at = [&](double c) {
        return c == 0.0 ? slopes.back() : map.derivative(c - alpha);
    };

    auto push_linear = [&](double lo, double hi) {
        if (!(lo < hi)) return;
        SmoothCircleMap::Piece p;
        p.x_lo = lo;
        p.x_hi = hi;
        p.lift_lo = map.lift(lo);
        p.slope = map.derivative(lo);
        out.pieces_.push_back(p);
    };
    auto push_blend = [&](double lo, double hi, double c, double t_lo, double lift_lo) {
        SmoothCircleMap::Piece p;
        p.x_lo = lo;
        p.x_hi = hi;
        p.lift_lo = lift_lo;
        p.blend = true;
        p.s_left = left_slope_at(c);
        p.s_right = map.derivative(c);
        p.t_lo = t_lo;
        p.span = span;
        out.pieces_.push_back(p);
    };

    double cursor = 0.0;
    if (wrap) {
        const double ds = slopes.front() - slopes.back();
        push_blend(0.0, alpha, 0.0, 0.5, map.lift_values()[0] + ds * span * sigma_half);
        cursor = alpha;
    }
    for (std::size_t i = wrap ? 1 : 0; i < corners.size(); ++i) {
        const double c = corners[i];
        push_linear(cursor, c - alpha);
        push_blend(c - alpha, c + alpha, c, 0.0, map.lift(c - alpha));
        cursor = c + alpha;
    }
    if (wrap) {
        push_linear(cursor, 1.0 - alpha);
        push_blend(1.0 - alpha, 1.0, 0.0, 0.0, map.lift(1.0 - alpha));
    } else {
        push_linear(cursor, 1.0);
    }

    for (const auto& p : out.pieces_) out.lift_bounds_.push_back(p.lift_lo);
    out.lift_bounds_.push_back(out.piece_lift(out.pieces_.back(), 1.0));

    const double rise = out.lift_bounds_.back() - out.lift_bounds_.front();
    if (std::abs(rise - map.degree()) > 1e-9) {
        throw error(errc::non_integer_degree, "smoothing changed the degree");
    }
    if (out.continuity_residual() > 1e-12) {
        throw error(errc::invariant_violation, "smoothed map lost continuity");
    }
    return out;
}

double find_fixed_point(const SmoothCircleMap& map) {
    if (map.value(0.0) == 0.0) return 0.0;
    const double base = std::round(map.lift(0.0));
    const int degree = map.degree();
    auto h = [&](double xi) {
        return xi >= 0.0 ? map.lift(xi) - base - xi : map.lift(1.0 + xi) - degree - base - xi;
    };
    double radius = std::max(map.alpha(), 1e-9);
    for (int attempt = 0; attempt < 8; ++attempt, radius *= 2.0) {
        const double r = std::min(radius * 2.0, 0.49);
        if (!(h(-r) < 0.0 && h(r) > 0.0)) continue;
        double lo = -r, hi = r;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) <= 0.0 ? lo : hi) = mid;
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            const double xx = x >= 0.0 ? x : 1.0 + x;
            x -= h(x) / (map.derivative(xx) - 1.0);
            if (!(x >= lo - map.alpha() && x <= hi + map.alpha())) { x = 0.5 * (lo + hi); break; }
        }
        return x >= 0.0 ? x : 1.0 + x;
    }
    throw error(errc::fixed_point_not_found, "no fixed point near 0");
}

double integrate_log_derivative(const StepDensity& q, const SmoothCircleMap& map) {
    std::vector<double> cuts = q.bounds;
    for (const auto& p : map.pieces()) cuts.push_back(p.x_lo);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : 1.0;
        if (!(lo < hi)) continue;
        const double qv = q.value_at(lo);
        const auto& piece = map.pieces()[std::upper_bound(map.pieces().begin(), map.pieces().end(),
                                                          lo,
                                                          [](double v, const SmoothCircleMap::Piece& p) {
                                                              return v < p.x_lo;
                                                          }) -
                                         map.pieces().begin() - 1];
        if (!piece.blend) {
            total += qv * (hi - lo) * std::log(piece.slope);
            continue;
        }
        // composite Simpson across the blend slice
        const int halves = 8;
        const double step = (hi - lo) / (2 * halves);
        const double top = std::nextafter(hi, lo);
        double acc = std::log(map.derivative(lo)) + std::log(map.derivative(top));
        for (int j = 1; j < 2 * halves; ++j) {
            acc += (j % 2 == 1 ? 4.0 : 2.0) *
                   std::log(map.derivative(std::min(lo + j * step, top)));
        }
        total += qv * acc * step / 3.0;
    }
    return total;
}

std::vector<SweepRow> alpha_sweep(const FamilyParams& params, const SweepConfig& config) {
    const ExponentPair closed = exponent_pair(params);
    std::vector<SweepRow> rows;
    rows.push_back({0.0, closed.lambda_abs, closed.lambda_max});

    const PiecewiseLinearCircleMap map = build_family_map(params);
    for (double alpha : config.alphas) {
        const SmoothCircleMap smooth = smooth_map(map, alpha, config.profile);
        const double lmax = lambda_max_by_cylinders(smooth, config.cylinder_level);
        const StepDensity density = ulam_stationary(smooth, config.ulam_bins, config.ulam_tol);
        const double labs = integrate_log_derivative(density, smooth);
        rows.push_back({alpha, labs, lmax});
    }
    return rows;
}

}  // namespace flexmap
