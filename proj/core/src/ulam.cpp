#include "flexmap/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flexmap/errors.hpp"
#include "flexmap/smoothing.hpp"

namespace flexmap {

namespace {

// Uniform view over the two map representations: ordered monotone segments
// of the lift with exact inversion.
struct PlView {
    const PiecewiseLinearCircleMap& map;
    std::size_t count() const { return map.segment_count(); }
    double x_lo(std::size_t i) const { return map.breakpoints()[i]; }
    double x_hi(std::size_t i) const {
        return i + 1 < count() ? map.breakpoints()[i + 1] : 1.0;
    }
    double lift(double x) const { return map.lift(x); }
    double invert(std::size_t i, double y) const { return map.invert_lift_on_segment(i, y); }
    int degree() const { return map.degree(); }
};

struct SmoothView {
    const SmoothCircleMap& map;
    std::size_t count() const { return map.pieces().size(); }
    double x_lo(std::size_t i) const { return map.pieces()[i].x_lo; }
    double x_hi(std::size_t i) const { return map.pieces()[i].x_hi; }
    double lift(double x) const { return map.lift(x); }
    double invert(std::size_t i, double y) const { return map.invert_lift_on_piece(i, y); }
    int degree() const { return map.degree(); }
};

template <typename View>
UlamOperator build_impl(const View& view, int bins) {
    if (bins < (1 << 6)) {
        throw error(errc::invalid_parameter, "ulam discretisation needs at least 2^6 bins");
    }
    UlamOperator op;
    op.bins = bins;
    op.rows.resize(static_cast<std::size_t>(bins));
    const double width = 1.0 / bins;

    std::size_t seg = 0;
    for (int i = 0; i < bins; ++i) {
        auto& row = op.rows[static_cast<std::size_t>(i)];
        const double bin_lo = static_cast<double>(i) * width;
        const double bin_hi = (i + 1 == bins) ? 1.0 : static_cast<double>(i + 1) * width;
        while (seg + 1 < view.count() && view.x_hi(seg) <= bin_lo) ++seg;

        for (std::size_t s = seg; s < view.count() && view.x_lo(s) < bin_hi; ++s) {
            const double a = std::max(bin_lo, view.x_lo(s));
            const double b = std::min(bin_hi, view.x_hi(s));
            if (!(a < b)) continue;
            const double ya = view.lift(a);
            const double yb = (b == view.x_hi(s) && s + 1 < view.count())
                                  ? view.lift(view.x_lo(s + 1))
                                  : (b == 1.0 ? view.lift(0.0) + view.degree() : view.lift(b));
            // march [ya, yb) across the bin grid of each unit translate
            double y = ya;
            double x_prev = a;
            while (y < yb - 0.0) {
                const double shift = std::floor(y);
                const int j = std::min(bins - 1, static_cast<int>((y - shift) * bins));
                double y_next = shift + (j + 1 == bins ? 1.0 : (j + 1) * width);
                bool last = false;
                if (y_next >= yb) {
                    y_next = yb;
                    last = true;
                }
                const double x_next = last ? b : view.invert(s, y_next);
                const double mass = (x_next - x_prev) * bins;
                if (mass > 0.0) {
                    if (!row.empty() && row.back().first == static_cast<std::uint32_t>(j)) {
                        row.back().second += mass;
                    } else {
                        row.emplace_back(static_cast<std::uint32_t>(j), mass);
                    }
                }
                x_prev = x_next;
                y = y_next;
                if (last) break;
            }
        }
    }
    return op;
}

template <typename View>
StepDensity stationary_impl(const View& view, int bins, double tol) {
    const UlamOperator op = build_impl(view, bins);
    const std::size_t n = static_cast<std::size_t>(bins);
    std::vector<double> mass(n, 1.0 / bins), next(n);
    const long cap = 1000000;
    for (long it = 1;; ++it) {
        op.apply_to_masses(mass, next);
        double norm = 0.0;
        for (double m : next) norm += m;
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            next[j] /= norm;
            diff += std::abs(next[j] - mass[j]);
        }
        mass.swap(next);
        if (diff <= tol) break;
        if (it >= cap) {
            throw error(errc::no_convergence, "ulam power iteration exceeded iteration cap");
        }
    }
    StepDensity out;
    out.bounds.resize(n);
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.bounds[j] = static_cast<double>(j) / bins;
        out.values[j] = mass[j] * bins;
    }
    return out;
}

}  // namespace

double UlamOperator::row_sum(std::size_t i) const {
    double total = 0.0;
    for (const auto& [j, w] : rows[i]) total += w;
    return total;
}

void UlamOperator::apply_to_masses(const std::vector<double>& mass,
                                   std::vector<double>& out) const {
    out.assign(mass.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double m = mass[i];
        if (m == 0.0) continue;
        for (const auto& [j, w] : rows[i]) out[j] += m * w;
    }
}

UlamOperator build_ulam_operator(const PiecewiseLinearCircleMap& map, int bins) {
    return build_impl(PlView{map}, bins);
}
UlamOperator build_ulam_operator(const SmoothCircleMap& map, int bins) {
    return build_impl(SmoothView{map}, bins);
}

StepDensity ulam_stationary(const PiecewiseLinearCircleMap& map, int bins, double tol) {
    return stationary_impl(PlView{map}, bins, tol);
}
StepDensity ulam_stationary(const SmoothCircleMap& map, int bins, double tol) {
    return stationary_impl(SmoothView{map}, bins, tol);
}

}  // namespace flexmap
