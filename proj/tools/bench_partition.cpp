// Serial reference vs OpenMP contraction of the partition-function grid.
#include <benchmark/benchmark.h>

#include "twistvol/partition.hpp"

using namespace twistvol;

namespace {

GridTables tables_for(int n, double hbar, int points) {
    const CompleteStructure cs = maximize_volume(build_spec(n));
    ContourPolicy pol;
    pol.points = points;
    double log_scale = 0.0;
    return build_tables(cs.spec, hbar, make_contour(cs, hbar, pol), log_scale);
}

void BM_serial(benchmark::State& st) {
    const GridTables g = tables_for(static_cast<int>(st.range(0)), 0.1, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(contract_serial(g));
}

void BM_parallel(benchmark::State& st) {
    const GridTables g = tables_for(static_cast<int>(st.range(0)), 0.1, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(contract_parallel(g));
}

void BM_tables(benchmark::State& st) {
    const CompleteStructure cs = maximize_volume(build_spec(static_cast<int>(st.range(0))));
    ContourPolicy pol;
    pol.points = static_cast<int>(st.range(1));
    const ContourSpec c = make_contour(cs, 0.1, pol);
    double log_scale = 0.0;
    for (auto _ : st) benchmark::DoNotOptimize(build_tables(cs.spec, 0.1, c, log_scale));
}

}  // namespace

// n = 2: two axes; n = 5: three axes with a coarse grid.
BENCHMARK(BM_serial)->Args({2, 300})->Args({2, 600})->Args({5, 80})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->Args({2, 300})->Args({2, 600})->Args({5, 80})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tables)->Args({2, 300})->Args({5, 80})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
