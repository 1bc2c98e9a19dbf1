// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to vary the parallel side.

#include <benchmark/benchmark.h>

#include "globenv/gp_sim.hpp"
#include "globenv/measures.hpp"
#include "globenv/ranks.hpp"

namespace {

using namespace globenv;

CurveSet make_curves(std::size_t s, std::size_t d) {
    const CurvePool pool = simulate_gp({0.1, kBaseResolution, 7}, s);
    return extract(pool, s, d);
}

void BM_RanksReference(benchmark::State& state) {
    const auto curves = make_curves(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::two_sided_pointwise_ranks(curves));
    }
}

void BM_RanksParallel(benchmark::State& state) {
    const auto curves = make_curves(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pointwise_ranks(curves));
    }
}

void BM_ContRanksReference(benchmark::State& state) {
    const auto curves = make_curves(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::continuous_pointwise_ranks(curves));
    }
}

void BM_ErlReference(benchmark::State& state) {
    const auto ranks = two_sided_pointwise_ranks(make_curves(static_cast<std::size_t>(state.range(0)), 100));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::erl_measure(ranks));
    }
}

void BM_ErlParallel(benchmark::State& state) {
    const auto ranks = two_sided_pointwise_ranks(make_curves(static_cast<std::size_t>(state.range(0)), 100));
    for (auto _ : state) {
        benchmark::DoNotOptimize(erl_measure(ranks));
    }
}

void BM_SimulateReference(benchmark::State& state) {
    const GpConfig config{1.0, kBaseResolution, 11};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::simulate_gp(config, static_cast<std::size_t>(state.range(0))));
    }
}

void BM_SimulateParallel(benchmark::State& state) {
    const GpConfig config{1.0, kBaseResolution, 11};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_gp(config, static_cast<std::size_t>(state.range(0))));
    }
}

} // namespace

BENCHMARK(BM_RanksReference)->Arg(40)->Arg(320);
BENCHMARK(BM_RanksParallel)->Arg(40)->Arg(320)->Arg(2560);
BENCHMARK(BM_ContRanksReference)->Arg(40)->Arg(320);
BENCHMARK(BM_ErlReference)->Arg(40)->Arg(320);
BENCHMARK(BM_ErlParallel)->Arg(40)->Arg(320)->Arg(2560);
BENCHMARK(BM_SimulateReference)->Arg(80)->Arg(640);
BENCHMARK(BM_SimulateParallel)->Arg(80)->Arg(640);

BENCHMARK_MAIN();
