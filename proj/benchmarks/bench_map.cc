#include <benchmark/benchmark.h>

#include "flexmap/circle_map.hpp"
#include "flexmap/family.hpp"

namespace {

using namespace flexmap;

void BM_FamilyEval(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    double x = 0.123456789;
    for (auto _ : state) {
        x = map.value(x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_FamilyEval);

void BM_Preimages(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    double y = 0.3;
    for (auto _ : state) {
        auto pre = map.preimages(y);
        benchmark::DoNotOptimize(pre.data());
        y = pre.front();
    }
}
BENCHMARK(BM_Preimages);

void BM_BuildFamilyMap(benchmark::State& state) {
    const auto params = FamilyParams::make(5, 0.99, 4, 0.75);
    for (auto _ : state) {
        auto map = build_family_map(params);
        benchmark::DoNotOptimize(&map);
    }
}
BENCHMARK(BM_BuildFamilyMap);

}  // namespace
