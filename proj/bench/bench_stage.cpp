// Serial reference stage against the OpenMP stage on the same inputs.

#include <benchmark/benchmark.h>

#include <map>

#include "forge/drawing.hpp"
#include "forge/pipeline.hpp"

namespace {

using forge::Drawing;

// Drawings of K_n up to the K_13 plan budget, built once.
const std::vector<Drawing>& inputs(int n) {
    static std::map<int, std::vector<Drawing>> cache;
    static const std::map<int, std::int64_t> budget{{5, 1}, {6, 3}, {7, 9}, {8, 20}};
    if (cache.empty()) cache[4] = {forge::seed_k4()};
    for (int k = 5; k <= n; ++k)
        if (!cache.count(k)) {
            forge::StageConfig cfg;
            cfg.max_crossings = budget.at(k);
            cache[k] = forge::generate_stage(cache[k - 1], cfg).drawings;
        }
    return cache[n];
}

forge::StageConfig stage(int n_out, int threads) {
    forge::StageConfig cfg;
    cfg.max_crossings = n_out == 8 ? 20 : 36;
    cfg.threads = threads;
    return cfg;
}

// range(0): vertices of the produced drawings
void BM_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& in = inputs(n - 1);
    for (auto _ : state) benchmark::DoNotOptimize(forge::generate_stage_serial(in, stage(n, 1)).drawings.size());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

// range(1): worker threads
void BM_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& in = inputs(n - 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(forge::generate_stage(in, stage(n, static_cast<int>(state.range(1)))).drawings.size());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

}  // namespace

BENCHMARK(BM_serial)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)->Args({8, 1})->Args({8, 2})->Args({8, 4})->Args({9, 1})->Args({9, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
