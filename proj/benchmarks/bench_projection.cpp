#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hysnet/sweeping.hpp"

static void BM_ProjectPolytope(benchmark::State& state) {
  const auto g = hysnet::build_geometry(dense_network(static_cast<int>(state.range(0)), 7));
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<Eigen::VectorXd> pts;
  for (int k = 0; k < 64; ++k) {
    Eigen::VectorXd p(g.m());
    for (Eigen::Index c = 0; c < g.m(); ++c) p(c) = 2.0 * g.halfwidths(c) * z(rng);
    pts.push_back(p);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hysnet::project_polytope(g, pts[k++ % pts.size()]));
  state.counters["springs"] = static_cast<double>(g.m());
}
BENCHMARK(BM_ProjectPolytope)->Arg(4)->Arg(5)->Arg(6);
