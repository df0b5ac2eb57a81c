// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "rigidlab/catalog.hpp"
#include "rigidlab/flex.hpp"
#include "rigidlab/pairs.hpp"

using namespace rigidlab;

namespace {

void flex_assembly(benchmark::State& state, bool parallel) {
    const Immersion s = catalog_surface("sphere");
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        FlexOperator op = parallel ? assemble_flex_operator(s, 2 * n, n) : assemble_flex_operator_serial(s, 2 * n, n);
        benchmark::DoNotOptimize(op.matrix.nonZeros());
    }
    state.counters["nodes"] = 2.0 * n * n;
}

void energy(benchmark::State& state, bool parallel) {
    const IsometricPair pair(catalog_surface("ellipsoid"), catalog_surface("ellipsoid"));
    const std::vector<int> grid = {static_cast<int>(state.range(0)), 8};
    for (auto _ : state) {
        const double e = parallel ? energy_inner_product(pair, metric_field(), metric_field(), grid)
                                  : energy_inner_product_serial(pair, metric_field(), metric_field(), grid);
        benchmark::DoNotOptimize(e);
    }
}

}  // namespace

BENCHMARK_CAPTURE(flex_assembly, serial, false)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(flex_assembly, parallel, true)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(energy, serial, false)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(energy, parallel, true)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
