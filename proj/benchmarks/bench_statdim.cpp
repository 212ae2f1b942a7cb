#include "idphase/statdim.hpp"
#include "idphase/theory.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace idphase;

static void BM_StatdimSample(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(statdim_mc(n, n / 3, 10, 5).mean);
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_StatdimSample)->Arg(1000)->Arg(4000);

static void BM_BoundaryPoint(benchmark::State& state) {
    double eps = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_star(eps));
        eps = eps > 0.98 ? 0.01 : eps + 0.01;
    }
}
BENCHMARK(BM_BoundaryPoint);
