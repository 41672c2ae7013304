#include <benchmark/benchmark.h>

#include "ccb/formal_group.hpp"
#include "ccb/presets.hpp"

using namespace ccb;

static void BM_EllipticConstruction(benchmark::State& state) {
    unsigned T = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        FormalGroupLaw e = FormalGroupLaw::elliptic({0, 0, 1, 0, 0}, 5, T + 4, T);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_EllipticConstruction)->Arg(8)->Arg(10)->Arg(12);

static void BM_EllipticExpLog(benchmark::State& state) {
    unsigned T = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        FormalGroupLaw e = FormalGroupLaw::elliptic({0, 0, 1, 0, 0}, 5, T + 4, T);
        benchmark::DoNotOptimize(e.exp_series());
    }
}
BENCHMARK(BM_EllipticExpLog)->Arg(8)->Arg(10);

static void BM_ProductE3ExpLog(benchmark::State& state) {
    for (auto _ : state) {
        FormalGroupLaw e3 = presets::product_e3(5, 12, 8);
        benchmark::DoNotOptimize(e3.exp_series());
    }
}
BENCHMARK(BM_ProductE3ExpLog);
