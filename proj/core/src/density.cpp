#include "flexmap/density.hpp"

#include <algorithm>
#include <cmath>

#include "flexmap/errors.hpp"

namespace flexmap {

namespace {

double fractional(double y) {
    double f = y - std::floor(y);
    return f < 1.0 ? f : 0.0;
}

std::vector<double> merged_bounds(const StepDensity& a, const StepDensity& b) {
    std::vector<double> cuts;
    cuts.reserve(a.bounds.size() + b.bounds.size());
    cuts.insert(cuts.end(), a.bounds.begin(), a.bounds.end());
    cuts.insert(cuts.end(), b.bounds.begin(), b.bounds.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

double StepDensity::integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double hi = (i + 1 < bounds.size()) ? bounds[i + 1] : 1.0;
        total += values[i] * (hi - bounds[i]);
    }
    return total;
}

double StepDensity::value_at(double x) const {
    if (!(x >= 0.0) || !(x < 1.0)) {
        throw error(errc::domain, "density evaluated outside [0,1)");
    }
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
    return values[static_cast<std::size_t>(it - bounds.begin()) - 1];
}

void StepDensity::check_probability() const {
    for (double v : values) {
        if (!(v >= 0.0)) throw error(errc::invariant_violation, "negative density value");
    }
    if (std::abs(integral() - 1.0) > 1e-12) {
        throw error(errc::invariant_violation, "density does not integrate to 1");
    }
}

double l1_distance(const StepDensity& a, const StepDensity& b) {
    const auto cuts = merged_bounds(a, b);
    double total = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : 1.0;
        if (!(lo < hi)) continue;
        total += std::abs(a.value_at(lo) - b.value_at(lo)) * (hi - lo);
    }
    return total;
}

double sup_distance(const StepDensity& a, const StepDensity& b) {
    const auto cuts = merged_bounds(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : 1.0;
        if (!(lo < hi)) continue;
        worst = std::max(worst, std::abs(a.value_at(lo) - b.value_at(lo)));
    }
    return worst;
}

FamilyDensityCoefficients family_density_coefficients(const FamilyParams& p) {
    const double pow2n = std::ldexp(1.0, p.n);
    const double pow2nk = std::ldexp(1.0, p.n - p.k);
    const double a1 =
        pow2n / (1.0 + 2.0 * p.u.complement * (pow2n - pow2nk - 1.0 + 2.0 * pow2nk * p.v.value));
    const double mid = 2.0 * a1 * p.u.complement;
    const double a7 = 2.0 * mid * p.v.value;
    return {a1, a1, mid, mid, mid, mid, a7};
}

StepDensity exact_invariant_density(const FamilyParams& p) {
    const auto c = family_density_coefficients(p);
    const double inv2n = std::ldexp(1.0, -p.n);
    const double inv2k = std::ldexp(1.0, -p.k);
    StepDensity q;
    q.bounds = {0.0, inv2n, 1.0 - inv2k};
    q.values = {c.a1, c.a3, c.a7};
    // collapse plateaus that coincide (u or v equal to 1/2)
    StepDensity out;
    for (std::size_t i = 0; i < q.values.size(); ++i) {
        if (!out.values.empty() && out.values.back() == q.values[i]) continue;
        out.bounds.push_back(q.bounds[i]);
        out.values.push_back(q.values[i]);
    }
    return out;
}

StepDensity transfer_apply(const PiecewiseLinearCircleMap& map, const StepDensity& q) {
    // Refine source cells at map breakpoints, push their lift images to the
    // output cut set, then read (Pq) off each output cell by summing
    // q(y)/f'(y) over the preimages of its midpoint.
    std::vector<double> source_cuts = q.bounds;
    source_cuts.insert(source_cuts.end(), map.breakpoints().begin(), map.breakpoints().end());
    std::sort(source_cuts.begin(), source_cuts.end());
    source_cuts.erase(std::unique(source_cuts.begin(), source_cuts.end()), source_cuts.end());

    std::vector<double> cuts;
    cuts.reserve(source_cuts.size() + 1);
    cuts.push_back(0.0);
    for (double x : source_cuts) cuts.push_back(fractional(map.lift(x)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a < 1e-15; }),
               cuts.end());

    StepDensity out;
    out.bounds = cuts;
    out.values.reserve(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : 1.0;
        const double mid = 0.5 * (cuts[i] + hi);
        double mass = 0.0;
        for (double y : map.preimages(mid)) {
            mass += q.value_at(y) / map.derivative(y);
        }
        out.values.push_back(mass);
    }
    return out;
}

double integrate_log_derivative(const StepDensity& q, const PiecewiseLinearCircleMap& map) {
    std::vector<double> cuts = q.bounds;
    cuts.insert(cuts.end(), map.breakpoints().begin(), map.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : 1.0;
        if (!(lo < hi)) continue;
        total += q.value_at(lo) * (hi - lo) * std::log(map.derivative(lo));
    }
    return total;
}

}  // namespace flexmap
