#include <benchmark/benchmark.h>

#include "ccb/counting.hpp"
#include "ccb/jets.hpp"
#include "ccb/presets.hpp"

using namespace ccb;

static void BM_SharpJetSearch(benchmark::State& state) {
    std::int64_t p = state.range(0);
    auto fp = FiniteField::prime_field(p);
    auto [w1, w2] = presets::sharp_forms(fp);
    for (auto _ : state) {
        auto r = max_jet_order(w1, w2, 4, 2);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SharpJetSearch)->Arg(5)->Arg(13);

static void BM_DeltaInvariant(benchmark::State& state) {
    auto f5 = FiniteField::prime_field(5);
    auto t = TruncSeries<FFElem>::variable(1, 12, f5->one(), 0);
    std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>> branches{
        {t * t * t, t * t * t * t}};
    for (auto _ : state) {
        auto d = delta_invariant(branches);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DeltaInvariant);
