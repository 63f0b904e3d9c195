#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hysnet/loading_trace.hpp"
#include "hysnet/reducibility.hpp"

static void BM_TraceAndCheck(benchmark::State& state) {
  const auto g = hysnet::build_geometry(dense_network(static_cast<int>(state.range(0)), 13));
  for (auto _ : state) {
    const auto tr = hysnet::trace_loading_polyline(g);
    benchmark::DoNotOptimize(hysnet::check_reducibility(g, tr).overall);
  }
}
BENCHMARK(BM_TraceAndCheck)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);
