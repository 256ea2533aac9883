#include <benchmark/benchmark.h>

#include "allee/basin.hpp"

namespace {

// Bistable strong-Allee setting; short horizon keeps one iteration under a second.
const allee::ModelParams params = allee::scenarios::conversion_rate(0.1, 0.4);

allee::IntegratorConfig bench_config()
{
    allee::IntegratorConfig cfg;
    cfg.t_end = 400.0;
    return cfg;
}

allee::GridSpec grid(std::int64_t n)
{
    allee::GridSpec g;
    g.nN = g.nP = static_cast<std::size_t>(n);
    return g;
}

void BM_BasinSerial(benchmark::State& state)
{
    const auto g = grid(state.range(0));
    const auto cfg = bench_config();
    for (auto _ : state) {
        auto basin = allee::compute_basin_serial(params, g, cfg);
        benchmark::DoNotOptimize(basin.cells.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_BasinParallel(benchmark::State& state)
{
    const auto g = grid(state.range(0));
    const auto cfg = bench_config();
    for (auto _ : state) {
        auto basin = allee::compute_basin(params, g, cfg);
        benchmark::DoNotOptimize(basin.cells.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_BasinSerial)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasinParallel)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
