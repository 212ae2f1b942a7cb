#include "idphase/certifier.hpp"
#include "idphase/lifting.hpp"
#include "idphase/signatures.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace idphase;

// Lifted Gaussian system at α = 0.5 with K near the predicted transition.
static void BM_CertifyLifted(benchmark::State& state) {
    const auto n = state.range(0);
    const auto l = static_cast<Eigen::Index>(std::ceil((1.0 + std::sqrt(1.0 + 8.0 * 0.5 * n)) / 2.0));
    const auto sys = lift(sample_signature(SignatureModel::gaussian(), l, n, 11));
    const auto a = stacked_constraints(sys, StackMode::Full);
    const auto cone = ConeSpec::canonical(n, n / 4);
    for (auto _ : state) benchmark::DoNotOptimize(certify(a, cone).verdict);
}
BENCHMARK(BM_CertifyLifted)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
