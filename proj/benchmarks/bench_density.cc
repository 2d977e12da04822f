#include <benchmark/benchmark.h>

#include "flexmap/density.hpp"
#include "flexmap/ulam.hpp"

namespace {

using namespace flexmap;

void BM_TransferApply(benchmark::State& state) {
    const auto params = FamilyParams::make(3, 0.87, 2, 0.61);
    const auto map = build_family_map(params);
    const auto q = exact_invariant_density(params);
    for (auto _ : state) {
        auto out = transfer_apply(map, q);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_TransferApply);

void BM_UlamAssembly(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    const int bins = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto op = build_ulam_operator(map, bins);
        benchmark::DoNotOptimize(op.rows.data());
    }
}
BENCHMARK(BM_UlamAssembly)->Arg(1 << 10)->Arg(1 << 12)->Arg(1 << 14);

void BM_UlamStationary(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(3, 0.87, 2, 0.61));
    const int bins = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto q = ulam_stationary(map, bins);
        benchmark::DoNotOptimize(q.values.data());
    }
}
BENCHMARK(BM_UlamStationary)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace
