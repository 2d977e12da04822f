#include <benchmark/benchmark.h>

#include "flexmap/markov.hpp"
#include "flexmap/smoothing.hpp"

namespace {

using namespace flexmap;

void BM_CylinderLambdaMax(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_max_by_cylinders(map, level));
    }
}
BENCHMARK(BM_CylinderLambdaMax)->Arg(10)->Arg(14)->Arg(18);

void BM_SmoothCylinderLambdaMax(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    const auto smooth = smooth_map(map, 1e-3);
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_max_by_cylinders(smooth, level));
    }
}
BENCHMARK(BM_SmoothCylinderLambdaMax)->Arg(10)->Arg(14);

void BM_ParryCheck(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(2, 0.75, 2, 0.75));
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rep = parry_check(map, level);
        benchmark::DoNotOptimize(rep.masses.data());
    }
}
BENCHMARK(BM_ParryCheck)->Arg(6)->Arg(10);

}  // namespace
