#include "idphase/lifting.hpp"
#include "idphase/signatures.hpp"

#include <benchmark/benchmark.h>

using namespace idphase;

static void BM_Lift(benchmark::State& state) {
    const auto n = state.range(0);
    const Eigen::Index l = n / 2;
    const auto s = sample_signature(SignatureModel::rademacher(), l, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(lift(s).a2.data());
    state.SetComplexityN(n);
}
BENCHMARK(BM_Lift)->RangeMultiplier(2)->Range(64, 256);

static void BM_HadamardRank(benchmark::State& state) {
    const auto s = sample_signature(SignatureModel::hadamard(1024), 25, 300, 3);
    const auto sys = lift(s);
    for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(sys.a2));
}
BENCHMARK(BM_HadamardRank)->Unit(benchmark::kMillisecond);
