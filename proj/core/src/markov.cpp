#include "flexmap/markov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "flexmap/errors.hpp"
#include "flexmap/smoothing.hpp"

namespace flexmap {

namespace {

constexpr int kMaxLevel = 26;
constexpr int kMaxSampleDepth = 40;

double fractional(double y) {
    double f = y - std::floor(y);
    return f < 1.0 ? f : 0.0;
}

// Fixed point of a piecewise-linear map, preferring the one at/closest to 0.
double fixed_point_of(const PiecewiseLinearCircleMap& map) {
    if (map.value(0.0) == 0.0) return 0.0;
    const auto& breaks = map.breakpoints();
    const auto& slopes = map.slopes();
    const auto& lifts = map.lift_values();
    double best = -1.0, best_dist = 2.0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double lo = breaks[i];
        const double hi = (i + 1 < slopes.size()) ? breaks[i + 1] : 1.0;
        // solve lifts[i] + s (x - lo) = x + t for integer t
        for (double t = std::ceil(lifts[i] - lo); ; t += 1.0) {
            const double x = (lifts[i] - slopes[i] * lo - t) / (1.0 - slopes[i]);
            if (x >= hi) break;
            if (x >= lo) {
                const double d = std::min(x, 1.0 - x);
                if (d < best_dist) { best_dist = d; best = x; }
            }
        }
    }
    if (best < 0.0) throw error(errc::fixed_point_not_found, "map has no fixed point");
    return best;
}

double fixed_point_of(const SmoothCircleMap& map) { return find_fixed_point(map); }

// Inverse-branch frame: points live in [fp, fp+1), cells are intervals
// there, and the two level-1 cells split at the non-trivial preimage of fp.
template <typename MapT>
struct BranchFrame {
    const MapT& map;
    double fp;      // fixed point in [0,1)
    double split;   // other preimage of fp, as a representative in (fp, fp+1)

    explicit BranchFrame(const MapT& m) : map(m), fp(fixed_point_of(m)) {
        if (m.degree() != 2) {
            throw error(errc::invalid_parameter, "cylinder machinery requires a degree-2 map");
        }
        const auto pre = m.preimages(fp);
        if (pre.size() != 2) {
            throw error(errc::invalid_parameter, "expected exactly two preimages of the fixed point");
        }
        double other = -1.0;
        for (double p : pre) {
            if (std::abs(p - fp) > 1e-12 && std::abs(std::abs(p - fp) - 1.0) > 1e-12) other = p;
        }
        if (other < 0.0) {
            throw error(errc::fixed_point_not_found, "could not separate the two branches");
        }
        split = rep(other);
    }

    double rep(double x) const { return x >= fp ? x : x + 1.0; }

    // Pullback of a cell endpoint through branch b, carrying the endpoint
    // role: fp maps to the window's left edge, fp+1 to its right edge.
    double pull(double y_rep, int b) const {
        const double win_lo = b == 0 ? fp : split;
        const double win_hi = b == 0 ? split : fp + 1.0;
        if (y_rep == fp) return win_lo;
        if (y_rep == fp + 1.0) return win_hi;
        const auto pre = map.preimages(fractional(y_rep));
        double best = win_lo;
        double best_gap = 2.0;
        for (double p : pre) {
            const double r = rep(p);
            if (r > win_lo && r < win_hi) return r;
            const double gap = std::min(std::abs(r - win_lo), std::abs(r - win_hi));
            if (gap < best_gap) { best_gap = gap; best = std::clamp(r, win_lo, win_hi); }
        }
        return best;  // degenerate cell; clamp keeps the enumeration total
    }
};

void check_level(int level, int max_level) {
    if (level < 1 || level > max_level) {
        throw error(errc::resource_limit,
                    "cylinder level " + std::to_string(level) + " outside [1, " +
                        std::to_string(max_level) + "]");
    }
}

template <typename MapT>
CylinderPartition cylinder_partition_impl(const MapT& map, int level) {
    check_level(level, kMaxLevel);
    BranchFrame<MapT> frame(map);
    std::vector<double> points{frame.fp};
    for (int j = 0; j < level; ++j) {
        std::vector<double> next;
        next.reserve(points.size() * 2);
        for (double p : points) {
            for (double q : map.preimages(p)) next.push_back(q);
        }
        std::sort(next.begin(), next.end());
        points.swap(next);
    }

    CylinderPartition part;
    part.level = level;
    part.fixed_point = frame.fp;
    part.endpoints = std::move(points);
    part.codes.resize(part.endpoints.size());
    for (std::size_t i = 0; i < part.cell_count(); ++i) {
        double x = part.cell_midpoint(i);
        std::uint32_t code = 0;
        for (int j = 0; j < level; ++j) {
            code = (code << 1) | (frame.rep(x) >= frame.split ? 1u : 0u);
            x = map.value(x);
        }
        part.codes[i] = code;
    }
    return part;
}

struct KahanSum {
    double total = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = total + y;
        carry = (t - total) - y;
        total = t;
    }
};

template <typename MapT>
double lambda_max_by_cylinders_impl(const MapT& map, int level) {
    check_level(level, kMaxLevel);
    BranchFrame<MapT> frame(map);
    const double mass = std::ldexp(1.0, -level);
    KahanSum sum;
    // depth-first over itineraries, pulling the cell interval back one
    // symbol at a time
    struct Node {
        double lo, hi;
        int depth;
        int next_branch;
    };
    std::vector<Node> stack;
    stack.push_back({frame.fp, frame.fp + 1.0, 0, 0});
    while (!stack.empty()) {
        Node& node = stack.back();
        if (node.depth == level) {
            sum.add(std::log(map.derivative(fractional(0.5 * (node.lo + node.hi)))));
            stack.pop_back();
            continue;
        }
        if (node.next_branch > 1) {
            stack.pop_back();
            continue;
        }
        const int b = node.next_branch++;
        stack.push_back({frame.pull(node.lo, b), frame.pull(node.hi, b), node.depth + 1, 0});
    }
    return mass * sum.total;
}

template <typename MapT>
double mme_point_from_bits_impl(const MapT& map, const std::vector<int>& bits) {
    if (bits.size() > static_cast<std::size_t>(kMaxSampleDepth)) {
        throw error(errc::resource_limit, "itinerary depth exceeds 40");
    }
    BranchFrame<MapT> frame(map);
    double y = frame.fp + 0.5;
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        y = frame.pull(y, *it != 0 ? 1 : 0);
    }
    return fractional(y);
}

template <typename MapT>
double sample_mme_point_impl(const MapT& map, int depth, std::uint64_t seed) {
    if (depth < 1 || depth > kMaxSampleDepth) {
        throw error(errc::resource_limit, "sample depth outside [1, 40]");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> bits(static_cast<std::size_t>(depth));
    std::uint64_t word = 0;
    for (int j = 0; j < depth; ++j) {
        if (j % 64 == 0) word = rng();
        bits[static_cast<std::size_t>(j)] = static_cast<int>((word >> (j % 64)) & 1u);
    }
    return mme_point_from_bits_impl(map, bits);
}

}  // namespace

double CylinderPartition::cell_midpoint(std::size_t i) const {
    const double lo = endpoints[i];
    const double hi = (i + 1 < endpoints.size()) ? endpoints[i + 1] : endpoints[0] + 1.0;
    double mid = 0.5 * (lo + hi);
    return mid < 1.0 ? mid : mid - 1.0;
}

double CylinderPartition::cell_length(std::size_t i) const {
    const double lo = endpoints[i];
    const double hi = (i + 1 < endpoints.size()) ? endpoints[i + 1] : endpoints[0] + 1.0;
    return hi - lo;
}

CylinderPartition cylinder_partition(const PiecewiseLinearCircleMap& map, int level) {
    return cylinder_partition_impl(map, level);
}
CylinderPartition cylinder_partition(const SmoothCircleMap& map, int level) {
    return cylinder_partition_impl(map, level);
}

MMEWeights mme_cell_masses(const CylinderPartition& partition) {
    return {std::vector<double>(partition.cell_count(), std::ldexp(1.0, -partition.level))};
}

ParryReport parry_check_with_partition(const PiecewiseLinearCircleMap& map,
                                       const std::vector<double>& endpoints) {
    const std::size_t cells = endpoints.size();
    if (cells < 2) throw error(errc::invalid_parameter, "partition needs at least two cells");

    auto nearest_index = [&](double y) -> std::size_t {
        auto it = std::lower_bound(endpoints.begin(), endpoints.end(), y);
        std::size_t i = static_cast<std::size_t>(it - endpoints.begin()) % cells;
        std::size_t prev = (i + cells - 1) % cells;
        auto cyc = [](double a, double b) {
            double d = std::abs(a - b);
            return std::min(d, 1.0 - d);
        };
        return cyc(endpoints[i], y) <= cyc(endpoints[prev], y) ? i : prev;
    };
    auto cell_len = [&](std::size_t i) {
        const double hi = (i + 1 < cells) ? endpoints[i + 1] : endpoints[0] + 1.0;
        return hi - endpoints[i];
    };

    // row i lists the cells that f(cell_i) covers
    std::vector<std::vector<std::uint32_t>> rows(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double lo = endpoints[i];
        const double lift_lo = map.lift(lo);
        const double lift_hi = (i + 1 < cells) ? map.lift(endpoints[i + 1])
                                               : map.lift(endpoints[0]) + map.degree();
        const double arc = lift_hi - lift_lo;

        const std::size_t j0 = nearest_index(fractional(lift_lo));
        double align = std::abs(fractional(lift_lo) - endpoints[j0]);
        align = std::min(align, 1.0 - align);
        if (align > 1e-10) {
            throw error(errc::not_markov, "cell image endpoint does not meet the partition");
        }
        double acc = 0.0;
        std::size_t j = j0;
        while (acc < arc - 1e-9) {
            rows[i].push_back(static_cast<std::uint32_t>(j));
            acc += cell_len(j);
            j = (j + 1) % cells;
            if (rows[i].size() > cells * static_cast<std::size_t>(map.degree()) + 1) {
                throw error(errc::not_markov, "cell image does not tile partition cells");
            }
        }
        if (std::abs(acc - arc) > 1e-9) {
            throw error(errc::not_markov, "cell image does not close on a partition point");
        }
    }

    // power iteration for the right and left Perron vectors
    const double tol = 1e-12;
    const int cap = 100000;
    std::vector<double> r(cells, 1.0 / static_cast<double>(cells)), l = r, scratch(cells);
    double eigenvalue = 0.0;
    int iterations = 0;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double>& x = pass == 0 ? r : l;
        for (iterations = 1; iterations <= cap; ++iterations) {
            std::fill(scratch.begin(), scratch.end(), 0.0);
            if (pass == 0) {
                for (std::size_t i = 0; i < cells; ++i) {
                    double acc = 0.0;
                    for (std::uint32_t j : rows[i]) acc += x[j];
                    scratch[i] = acc;
                }
            } else {
                for (std::size_t i = 0; i < cells; ++i) {
                    for (std::uint32_t j : rows[i]) scratch[j] += x[i];
                }
            }
            double norm = 0.0;
            for (double y : scratch) norm += y;
            double diff = 0.0;
            for (std::size_t i = 0; i < cells; ++i) {
                scratch[i] /= norm;
                diff += std::abs(scratch[i] - x[i]);
            }
            x.swap(scratch);
            if (pass == 0) eigenvalue = norm;
            if (diff <= tol) break;
            if (iterations == cap) {
                throw error(errc::no_convergence, "power iteration did not converge");
            }
        }
    }

    ParryReport report;
    report.eigenvalue = eigenvalue;
    report.iterations = iterations;
    report.masses.resize(cells);
    double total = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        report.masses[i] = l[i] * r[i];
        total += report.masses[i];
    }
    for (double& m : report.masses) m /= total;
    return report;
}

ParryReport parry_check(const PiecewiseLinearCircleMap& map, int level) {
    check_level(level, 20);
    return parry_check_with_partition(map, cylinder_partition(map, level).endpoints);
}

double lambda_max_by_cylinders(const PiecewiseLinearCircleMap& map, int level) {
    return lambda_max_by_cylinders_impl(map, level);
}
double lambda_max_by_cylinders(const SmoothCircleMap& map, int level) {
    return lambda_max_by_cylinders_impl(map, level);
}

double mme_point_from_bits(const PiecewiseLinearCircleMap& map, const std::vector<int>& bits) {
    return mme_point_from_bits_impl(map, bits);
}
double mme_point_from_bits(const SmoothCircleMap& map, const std::vector<int>& bits) {
    return mme_point_from_bits_impl(map, bits);
}

double sample_mme_point(const PiecewiseLinearCircleMap& map, int depth, std::uint64_t seed) {
    return sample_mme_point_impl(map, depth, seed);
}
double sample_mme_point(const SmoothCircleMap& map, int depth, std::uint64_t seed) {
    return sample_mme_point_impl(map, depth, seed);
}

}  // namespace flexmap
