#include <benchmark/benchmark.h>

#include "ccb/series.hpp"

using namespace ccb;

namespace {

TruncSeries<PadicNum> dense_series(unsigned nvars, unsigned trunc) {
    PadicNum one = PadicNum::one(7, 16);
    TruncSeries<PadicNum> s(nvars, trunc, one);
    Mono m(nvars, 0);
    // all monomials of degree <= trunc in two variables
    for (unsigned a = 0; a <= trunc; ++a)
        for (unsigned b = 0; a + b <= trunc; ++b) {
            m[0] = static_cast<std::uint16_t>(a);
            m[1] = static_cast<std::uint16_t>(b);
            s.add_term(m, PadicNum::from_int(7, 1 + a + 2 * b, 16));
        }
    return s;
}

}  // namespace

static void BM_SeriesMultiply(benchmark::State& state) {
    unsigned T = static_cast<unsigned>(state.range(0));
    auto a = dense_series(2, T);
    auto b = dense_series(2, T);
    for (auto _ : state) {
        auto c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesMultiply)->Arg(6)->Arg(10)->Arg(14);

static void BM_SeriesCompose(benchmark::State& state) {
    unsigned T = static_cast<unsigned>(state.range(0));
    auto h = dense_series(2, T);
    PadicNum one = PadicNum::one(7, 16);
    auto z = TruncSeries<PadicNum>::variable(1, T, one, 0);
    std::vector<TruncSeries<PadicNum>> subs{z, z + z * z};
    for (auto _ : state) {
        auto c = h.compose(subs);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesCompose)->Arg(6)->Arg(10);
