#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hysnet/sweeping.hpp"

static void BM_SimulateTriangle(benchmark::State& state) {
  const auto g = hysnet::build_geometry(dense_network(static_cast<int>(state.range(0)), 11));
  const hysnet::Signal sig({{0.0, 0.0}, {1.0, 3.0}, {2.0, -2.0}, {3.0, 1.0}});
  std::size_t samples = 0;
  for (auto _ : state) {
    const auto out = hysnet::simulate(g, sig);
    samples = out.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["samples"] = static_cast<double>(samples);
}
BENCHMARK(BM_SimulateTriangle)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
