// OpenMP kernels against their serial references. Thread count follows
// OMP_NUM_THREADS, capped by MONOTONE_RATIO_THREADS.

#include <benchmark/benchmark.h>

#include "monoratio/construct.hpp"
#include "monoratio/parallel.hpp"
#include "monoratio/verify.hpp"

using namespace monoratio;

namespace {

const FunctionPair& bench_pair() {
    static const GeneratedCase c = random_pair(11);
    return c.pair;
}

void BM_GridParallel(benchmark::State& state) {
    const auto xs = uniform_grid(bench_pair().window(), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(bench_pair(), xs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridSerial(benchmark::State& state) {
    const auto xs = uniform_grid(bench_pair().window(), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid_serial(bench_pair(), xs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_campaign(1, static_cast<std::size_t>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_campaign_serial(1, static_cast<std::size_t>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_GridParallel)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_GridSerial)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_CampaignParallel)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignSerial)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
