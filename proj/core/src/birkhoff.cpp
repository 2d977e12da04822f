#include "flexmap/birkhoff.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "flexmap/errors.hpp"
#include "flexmap/smoothing.hpp"

namespace flexmap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

template <typename MapT>
BirkhoffEstimate birkhoff_impl(const MapT& map, const BirkhoffOptions& opt) {
    if (opt.samples < 2 || opt.iterations < 1 || opt.burn_in < 0) {
        throw error(errc::invalid_parameter, "birkhoff needs samples >= 2 and iterations >= 1");
    }
    std::vector<double> orbit_means;
    orbit_means.reserve(static_cast<std::size_t>(opt.samples));
    for (int s = 0; s < opt.samples; ++s) {
        // per-sample generator derived from the master seed, so results do
        // not depend on how samples are scheduled
        std::mt19937_64 rng(splitmix64(opt.seed + static_cast<std::uint64_t>(s)));
        double x = std::ldexp(static_cast<double>(rng() >> 11), -53);
        // A few ulps of dither per step. Branches with dyadic slopes are
        // exact in floating point and park plain orbits on short spurious
        // cycles, which biases the average; the dither restores typical
        // orbits at a perturbation far below the estimator's resolution.
        auto step = [&](double y) {
            const double jitter =
                std::ldexp(static_cast<double>(rng() >> 11) - 4503599627370496.0, -103);
            double z = map.value(y) + jitter;
            z -= std::floor(z);
            return z < 1.0 ? z : 0.0;
        };
        for (int j = 0; j < opt.burn_in; ++j) x = step(x);
        double acc = 0.0;
        for (int j = 0; j < opt.iterations; ++j) {
            acc += std::log(map.derivative(x));
            x = step(x);
        }
        orbit_means.push_back(acc / opt.iterations);
    }
    double mean = 0.0;
    for (double m : orbit_means) mean += m;
    mean /= opt.samples;
    double var = 0.0;
    for (double m : orbit_means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(opt.samples - 1);
    return {mean, std::sqrt(var / opt.samples)};
}

}  // namespace

BirkhoffEstimate birkhoff_lambda_abs(const PiecewiseLinearCircleMap& map,
                                     const BirkhoffOptions& options) {
    return birkhoff_impl(map, options);
}
BirkhoffEstimate birkhoff_lambda_abs(const SmoothCircleMap& map, const BirkhoffOptions& options) {
    return birkhoff_impl(map, options);
}

}  // namespace flexmap
