// flexmap: build expanding degree-2 circle maps with prescribed Lyapunov
// exponents and check them against independent estimators.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flexmap/birkhoff.hpp"
#include "flexmap/density.hpp"
#include "flexmap/errors.hpp"
#include "flexmap/exponents.hpp"
#include "flexmap/markov.hpp"
#include "flexmap/realize.hpp"
#include "flexmap/smoothing.hpp"
#include "flexmap/ulam.hpp"
#include "report.hpp"

namespace {

using namespace flexmap;
using flexmap::cli::format_full;

constexpr int kExitBadInput = 2;
constexpr int kExitTolerance = 3;

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text;
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

struct RealizeArgs {
    double a = 0.0;
    double b = 0.0;
    double tol = 1e-10;
    int verify = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int bins = 1 << 14;
    int level = 0;  // 0 = pick max(n,k)+1
    int samples = 1000;
    int iterations = 10000;
    int burn_in = 1000;
    std::string out;
    bool timing = false;
};

int cmd_realize(const RealizeArgs& args) {
    if (args.verify >= 2 && !args.seed_set) {
        std::cerr << "error: --seed is required at verify level 2 (reports must be reproducible)\n";
        return kExitBadInput;
    }

    flexmap::cli::Report report;
    report.target_a = args.a;
    report.target_b = args.b;
    report.tolerance = args.tol;
    report.verify_level = args.verify;

    const auto t0 = std::chrono::steady_clock::now();
    const RealizationResult res = realize(args.a, args.b, args.tol);
    const double realize_ms = elapsed_ms(t0);

    report.params = res.params;
    report.closed_form = res.achieved;
    report.residual_abs = res.residual_abs;
    report.residual_max = res.residual_max;
    report.iterations = res.iterations;

    const auto t1 = std::chrono::steady_clock::now();
    if (args.verify >= 1) {
        const auto map = build_family_map(res.params);
        const int exact_level = std::max(res.params.n, res.params.k) + 1;
        const int level = args.level > 0 ? args.level : std::min(exact_level, 26);

        flexmap::cli::CylinderBlock cyl;
        cyl.level = level;
        cyl.estimate = lambda_max_by_cylinders(map, level);
        report.cylinder_tolerance = level >= exact_level ? 1e-9 : 1e-4;
        cyl.ok = std::abs(cyl.estimate - res.achieved.lambda_max) <= report.cylinder_tolerance;
        report.cylinders = cyl;

        flexmap::cli::UlamBlock ulam;
        ulam.bins = args.bins;
        const StepDensity stationary = ulam_stationary(map, args.bins);
        ulam.estimate = integrate_log_derivative(stationary, map);
        ulam.l1_error = l1_distance(stationary, exact_invariant_density(res.params));
        report.ulam_l1_tolerance = 1e-3 * std::max(1.0, 16384.0 / args.bins);
        ulam.ok = ulam.l1_error <= report.ulam_l1_tolerance;
        report.ulam = ulam;
    }
    if (args.verify >= 2) {
        const auto map = build_family_map(res.params);
        BirkhoffOptions opt;
        opt.samples = args.samples;
        opt.iterations = args.iterations;
        opt.burn_in = args.burn_in;
        opt.seed = args.seed;
        const BirkhoffEstimate est = birkhoff_lambda_abs(map, opt);
        flexmap::cli::BirkhoffBlock block;
        block.samples = opt.samples;
        block.iterations = opt.iterations;
        block.burn_in = opt.burn_in;
        block.seed = opt.seed;
        block.estimate = est.estimate;
        block.standard_error = est.standard_error;
        block.ok = std::abs(est.estimate - res.achieved.lambda_abs) <=
                   report.birkhoff_sigmas * est.standard_error;
        report.birkhoff = block;
    }
    if (args.timing) {
        report.timing = flexmap::cli::Timing{realize_ms, elapsed_ms(t1)};
    }

    emit(to_json(report).dump(2) + "\n", args.out);
    return report.within_tolerances() ? 0 : kExitTolerance;
}

struct ParamArgs {
    int n = 2;
    double u = 0.5;
    int k = 2;
    double v = 0.5;
    FamilyParams make() const { return FamilyParams::make(n, u, k, v); }
};

int cmd_exponents(const ParamArgs& args, const std::string& out) {
    const auto pair = exponent_pair(args.make());
    nlohmann::ordered_json j;
    j["lambda_abs"] = pair.lambda_abs;
    j["lambda_max"] = pair.lambda_max;
    emit(j.dump(2) + "\n", out);
    return 0;
}

int cmd_density(const ParamArgs& args, const std::string& format, const std::string& out) {
    const StepDensity q = exact_invariant_density(args.make());
    if (format == "csv") {
        std::string text = "left,right,value\n";
        for (std::size_t i = 0; i < q.values.size(); ++i) {
            const double hi = (i + 1 < q.bounds.size()) ? q.bounds[i + 1] : 1.0;
            text += format_full(q.bounds[i]) + "," + format_full(hi) + "," +
                    format_full(q.values[i]) + "\n";
        }
        emit(text, out);
    } else {
        nlohmann::ordered_json j;
        j["plateaus"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < q.values.size(); ++i) {
            const double hi = (i + 1 < q.bounds.size()) ? q.bounds[i + 1] : 1.0;
            j["plateaus"].push_back(
                {{"left", q.bounds[i]}, {"right", hi}, {"value", q.values[i]}});
        }
        j["integral"] = q.integral();
        emit(j.dump(2) + "\n", out);
    }
    return 0;
}

struct SweepArgs {
    ParamArgs params;
    std::vector<double> alphas;
    int bins = 1 << 14;
    int level = 20;
    std::string profile = "cubic";
    std::string out;
};

int cmd_sweep(const SweepArgs& args) {
    SweepConfig config;
    config.alphas = args.alphas;
    config.ulam_bins = args.bins;
    config.cylinder_level = args.level;
    config.profile =
        args.profile == "quintic" ? BlendProfile::quintic : BlendProfile::cubic;
    const auto rows = alpha_sweep(args.params.make(), config);

    std::string text = "alpha,lambda_abs_est,lambda_max_est,lambda_abs_exact,lambda_max_exact\n";
    const double la = rows.front().lambda_abs_est;
    const double lm = rows.front().lambda_max_est;
    for (const auto& row : rows) {
        text += format_full(row.alpha) + "," + format_full(row.lambda_abs_est) + "," +
                format_full(row.lambda_max_est) + "," + format_full(la) + "," + format_full(lm) +
                "\n";
    }
    emit(text, args.out);
    return 0;
}

struct PlotArgs {
    std::string what = "map";
    ParamArgs params;
    int samples = 1000;
    std::string out;
};

int cmd_plot_data(const PlotArgs& args) {
    const auto p = args.params.make();
    std::string text = "x,value\n";
    if (args.what == "map") {
        const auto map = build_family_map(p);
        for (int i = 0; i < args.samples; ++i) {
            const double x = static_cast<double>(i) / args.samples;
            text += format_full(x) + "," + format_full(map.value(x)) + "\n";
        }
    } else {
        const StepDensity q = exact_invariant_density(p);
        for (int i = 0; i < args.samples; ++i) {
            const double x = static_cast<double>(i) / args.samples;
            text += format_full(x) + "," + format_full(q.value_at(x)) + "\n";
        }
    }
    emit(text, args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expanding circle maps with prescribed Lyapunov exponents"};
    app.require_subcommand(1);

    RealizeArgs realize_args;
    auto* realize_cmd = app.add_subcommand(
        "realize", "find family parameters hitting targets (a, b) and verify them");
    realize_cmd->add_option("--a", realize_args.a, "target exponent for the a.c. measure")
        ->required();
    realize_cmd->add_option("--b", realize_args.b, "target exponent for the max-entropy measure")
        ->required();
    realize_cmd->add_option("--tol", realize_args.tol, "residual tolerance (>= 1e-12)");
    realize_cmd->add_option("--verify", realize_args.verify, "0 closed forms, 1 +ulam+cylinders, 2 +birkhoff")
        ->check(CLI::Range(0, 2));
    auto* seed_opt = realize_cmd->add_option("--seed", realize_args.seed, "RNG seed (required at --verify 2)");
    realize_cmd->add_option("--bins", realize_args.bins, "ulam bins");
    realize_cmd->add_option("--level", realize_args.level, "cylinder level (default max(n,k)+1)");
    realize_cmd->add_option("--samples", realize_args.samples, "birkhoff orbits");
    realize_cmd->add_option("--iterations", realize_args.iterations, "birkhoff iterations per orbit");
    realize_cmd->add_option("--burn-in", realize_args.burn_in, "birkhoff burn-in iterations");
    realize_cmd->add_option("--out", realize_args.out, "also write the JSON report here");
    realize_cmd->add_flag("--timing", realize_args.timing, "include wall-clock timing in the report");

    ParamArgs exp_args;
    std::string exp_out;
    auto* exp_cmd = app.add_subcommand("exponents", "closed-form exponent pair for (n, u, k, v)");
    exp_cmd->add_option("--n", exp_args.n)->required();
    exp_cmd->add_option("--u", exp_args.u)->required();
    exp_cmd->add_option("--k", exp_args.k)->required();
    exp_cmd->add_option("--v", exp_args.v)->required();
    exp_cmd->add_option("--out", exp_out);

    ParamArgs density_args;
    std::string density_format = "json", density_out;
    auto* density_cmd = app.add_subcommand("density", "exact invariant density plateaus");
    density_cmd->add_option("--n", density_args.n)->required();
    density_cmd->add_option("--u", density_args.u)->required();
    density_cmd->add_option("--k", density_args.k)->required();
    density_cmd->add_option("--v", density_args.v)->required();
    density_cmd->add_option("--format", density_format)->check(CLI::IsMember({"json", "csv"}));
    density_cmd->add_option("--out", density_out);

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "exponent convergence of mollified maps");
    sweep_cmd->add_option("--n", sweep_args.params.n)->required();
    sweep_cmd->add_option("--u", sweep_args.params.u)->required();
    sweep_cmd->add_option("--k", sweep_args.params.k)->required();
    sweep_cmd->add_option("--v", sweep_args.params.v)->required();
    sweep_cmd->add_option("--alphas", sweep_args.alphas, "blend radii")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--bins", sweep_args.bins);
    sweep_cmd->add_option("--level", sweep_args.level);
    sweep_cmd->add_option("--profile", sweep_args.profile)
        ->check(CLI::IsMember({"cubic", "quintic"}));
    sweep_cmd->add_option("--out", sweep_args.out);

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot-data", "dense samples of the map graph or density");
    plot_cmd->add_option("--what", plot_args.what)->check(CLI::IsMember({"map", "density"}));
    plot_cmd->add_option("--n", plot_args.params.n)->required();
    plot_cmd->add_option("--u", plot_args.params.u)->required();
    plot_cmd->add_option("--k", plot_args.params.k)->required();
    plot_cmd->add_option("--v", plot_args.params.v)->required();
    plot_cmd->add_option("--samples", plot_args.samples);
    plot_cmd->add_option("--out", plot_args.out);

    CLI11_PARSE(app, argc, argv);
    realize_args.seed_set = seed_opt->count() > 0;

    try {
        if (realize_cmd->parsed()) return cmd_realize(realize_args);
        if (exp_cmd->parsed()) return cmd_exponents(exp_args, exp_out);
        if (density_cmd->parsed()) return cmd_density(density_args, density_format, density_out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
        if (plot_cmd->parsed()) return cmd_plot_data(plot_args);
    } catch (const flexmap::error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        switch (e.code()) {
            case errc::invalid_parameter:
            case errc::invalid_targets:
            case errc::alpha_too_large:
            case errc::domain:
            case errc::infeasible:
                return kExitBadInput;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
