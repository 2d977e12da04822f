#include <benchmark/benchmark.h>

#include "flexmap/birkhoff.hpp"
#include "flexmap/realize.hpp"

namespace {

using namespace flexmap;

void BM_Realize(benchmark::State& state) {
    for (auto _ : state) {
        auto res = realize(0.4, 1.0, 1e-10);
        benchmark::DoNotOptimize(res.params.u.value);
    }
}
BENCHMARK(BM_Realize);

void BM_RealizeStress(benchmark::State& state) {
    for (auto _ : state) {
        auto res = realize(0.1, 2.0, 1e-10);
        benchmark::DoNotOptimize(res.params.u.value);
    }
}
BENCHMARK(BM_RealizeStress);

void BM_Birkhoff(benchmark::State& state) {
    const auto map = build_family_map(FamilyParams::make(2, 0.75, 2, 0.75));
    BirkhoffOptions opt;
    opt.samples = static_cast<int>(state.range(0));
    opt.iterations = 2000;
    opt.burn_in = 200;
    opt.seed = 1;
    for (auto _ : state) {
        auto est = birkhoff_lambda_abs(map, opt);
        benchmark::DoNotOptimize(est.estimate);
    }
}
BENCHMARK(BM_Birkhoff)->Arg(50)->Arg(200);

}  // namespace
