#include <benchmark/benchmark.h>

#include "slowfast/dimension.hpp"
#include "slowfast/entryexit.hpp"
#include "slowfast/models.hpp"
#include "slowfast/series.hpp"

using namespace slowfast;

namespace {

void BM_LienardSdi(benchmark::State& state) {
    const ClassicalLienardModel m(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sdi(m, 1e-3, 1e-3));
}
BENCHMARK(BM_LienardSdi)->Arg(0)->Arg(4)->Arg(49);

void BM_NormalFormSdi(benchmark::State& state) {
    const NormalFormModel m(static_cast<int>(state.range(0)), 1, 10, 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sdi(m, 1e-3, 1e-3));
}
BENCHMARK(BM_NormalFormSdi)->Arg(2)->Arg(10)->Arg(100);

void BM_TwoStrokeLimits(benchmark::State& state) {
    const TwoStrokeModel m(1.0, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.omega_limit(0.05));
        benchmark::DoNotOptimize(m.alpha_limit(0.05));
    }
}
BENCHMARK(BM_TwoStrokeLimits);

void BM_NextHeight(benchmark::State& state) {
    const NormalFormModel m(2, 1, static_cast<int>(state.range(0)), 1.0, 1.0);
    const Orientation o = orientation(m, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(next_height(m, 0.01, o));
}
BENCHMARK(BM_NextHeight)->Arg(0)->Arg(10);

void BM_LienardTableRun(benchmark::State& state) {
    const ClassicalLienardModel m(0, 2.0);
    SequenceConfig cfg;
    cfg.h0 = 0.001;
    cfg.max_iterations = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(generate_sequence(m, cfg));
}
BENCHMARK(BM_LienardTableRun)->Unit(benchmark::kMillisecond);

void BM_Estimators(benchmark::State& state) {
    const NormalFormModel m(2, 1, 1, 1.0, 1.0);
    SequenceConfig cfg;
    cfg.h0 = 0.1;
    cfg.max_iterations = 2000;
    const FractalSequence seq = generate_sequence(m, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(all_estimates(seq));
}
BENCHMARK(BM_Estimators);

void BM_SeriesInvert(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    const TruncatedSeries psi = psi_from_h1(TruncatedSeries::constant(1.0, order));
    for (auto _ : state) benchmark::DoNotOptimize(series_invert(psi));
}
BENCHMARK(BM_SeriesInvert)->Arg(16)->Arg(32)->Arg(64);

void BM_GFromH1(benchmark::State& state) {
    const TruncatedSeries h1 = TruncatedSeries::monomial(1.0, 4, 32);
    for (auto _ : state) benchmark::DoNotOptimize(g_from_h1(h1));
}
BENCHMARK(BM_GFromH1);

}  // namespace

BENCHMARK_MAIN();
