#include <gtest/gtest.h>

#include <random>

#include "hysnet/error.hpp"
#include "hysnet/sweeping.hpp"
#include "oracles.hpp"

using namespace hysnet;

namespace {

ConfigurationGeometry chain2() { return build_geometry(SpringNetwork(3, {{1, 2, 1.0, 1.0}, {2, 3, 1.0, 2.0}})); }

Eigen::VectorXd random_point(std::mt19937_64& rng, const ConfigurationGeometry& g, double spread) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd p(g.m());
  for (Eigen::Index c = 0; c < g.m(); ++c) p(c) = spread * g.halfwidths(c) * n(rng);
  return p;
}

Signal triangle(double amp) { return Signal({{0.0, 0.0}, {1.0, amp}, {3.0, -amp}}); }

}  // namespace

TEST(ProjectPolytope, FixedPoint) {
  const auto g = chain2();
  const Eigen::Vector2d p(0.3, 0.3);
  EXPECT_LE((project_polytope(g, p) - p).norm(), 1e-12);
}

TEST(ProjectPolytope, ChainCorner) {
  const auto g = chain2();
  EXPECT_LE((project_polytope(g, Eigen::Vector2d(2.0, 2.0)) - Eigen::Vector2d(1.0, 1.0)).norm(), 1e-12);
}

TEST(ProjectPolytope, RejectsBadArguments) {
  const auto g = chain2();
  EXPECT_THROW(project_polytope(g, Eigen::Vector2d(1, 1), 0.0), InvalidArgument);
  EXPECT_THROW(project_polytope(g, Eigen::Vector3d(1, 1, 1)), InvalidArgument);
}

TEST(ProjectPolytope, IterationCapRaises) {
  std::mt19937_64 rng(30);
  const auto g = build_geometry(oracle::random_network(rng, 5, 8));
  ProjectionOptions opts;
  opts.max_iter = 1;
  opts.polish = false;
  opts.tol = 1e-300;
  EXPECT_THROW(project_polytope_detailed(g, random_point(rng, g, 5.0), opts), ConvergenceError);
}

TEST(ProjectPolytope, MatchesBruteForceActiveSets) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> nodes(3, 5);
    const int n = nodes(rng);
    std::uniform_int_distribution<int> springs(n - 1, 6);
    const auto g = build_geometry(oracle::random_network(rng, n, springs(rng)));
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd p = random_point(rng, g, 2.0);
      const Eigen::VectorXd want = oracle::qp_bruteforce(g, p);
      ASSERT_LE((project_polytope(g, p) - want).norm(), 1e-8);
      ASSERT_LE((oracle::qp_active_set(g, p) - want).norm(), 1e-8);
    }
  }
}

TEST(ProjectPolytope, VariationalInequality) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = build_geometry(oracle::random_network(rng, 6, 10));
    const Eigen::VectorXd p = random_point(rng, g, 3.0);
    const Eigen::VectorXd x = project_polytope(g, p);
    ASSERT_TRUE(g.is_admissible(x, 1e-10));
    for (int k = 0; k < 50; ++k) {
      const Eigen::VectorXd z = project_polytope(g, random_point(rng, g, 0.5));
      ASSERT_LE((p - x).dot(z - x), 1e-9);
    }
  }
}

TEST(SweepStep, FreeFlowInInterior) {
  const auto g = chain2();
  const auto s = sweep_step(initial_state(g), g, 0.5);
  EXPECT_LE((s.u - 0.5 * g.f0).norm(), 1e-15);
  EXPECT_EQ(s.g, 0.5);
}

TEST(SweepStep, SaturatesAtFacet) {
  const auto g = chain2();
  SweepingState s = initial_state(g);
  for (int k = 0; k < 100; ++k) s = sweep_step(s, g, 0.04);
  EXPECT_LE((s.u - Eigen::Vector2d(1.0, 1.0)).norm(), 1e-12);
}

TEST(SweepStep, ZeroIncrementKeepsState) {
  const auto g = chain2();
  SweepingState s = sweep_step(initial_state(g), g, 0.3);
  const auto t = sweep_step(s, g, 0.0);
  EXPECT_EQ(t.u, s.u);
}

TEST(Simulate, ZeroInput) {
  const auto g = chain2();
  for (const auto& s : simulate(g, Signal({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}))) {
    EXPECT_EQ(s.sigma.norm(), 0.0);
    EXPECT_EQ(s.reaction, 0.0);
  }
}

// Two springs in series act as one stop with a = 1/2, rho = 2.
TEST(Simulate, ChainTriangleWaveTracesEffectiveStop) {
  const auto g = chain2();
  const Signal sig = triangle(4.0);
  const auto samples = simulate(g, sig);
  std::vector<double> gs;
  for (const auto& s : samples) gs.push_back(s.g);
  const auto expect = oracle::stop_sum({0.5}, {2.0}, gs);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    ASSERT_NEAR(samples[k].sigma(0), expect[k], 1e-12);
    ASSERT_NEAR(samples[k].sigma(1), expect[k], 1e-12);
  }
}

TEST(Simulate, BreakpointsAreSampled) {
  const auto g = chain2();
  const auto samples = simulate(g, triangle(1.0));
  int marks = 0;
  for (const auto& s : samples) marks += s.breakpoint;
  EXPECT_EQ(marks, 3);
  EXPECT_EQ(samples.back().g, -1.0);
  EXPECT_EQ(samples.back().t, 3.0);
}

TEST(SimulateProperties, FeasibleBalancedAndDiscreteVariationalInequality) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = build_geometry(oracle::random_network(rng, 5, 8));
    const Signal sig = oracle::random_signal(rng, 8, 4.0);
    SimulationOptions opts;
    opts.max_dg = 0.05;
    const auto samples = simulate(g, sig, opts);
    std::vector<Eigen::VectorXd> tests;
    for (int k = 0; k < 10; ++k) tests.push_back(project_polytope(g, random_point(rng, g, 0.7)));
    for (std::size_t k = 0; k < samples.size(); ++k) {
      ASSERT_TRUE(g.is_admissible(samples[k].u, 1e-10));
      ASSERT_TRUE(validate_balance(g, samples[k].sigma, 1e-9));
      if (k == 0) continue;
      const Eigen::VectorXd pred = samples[k - 1].u + (samples[k].g - samples[k - 1].g) * g.f0;
      for (const auto& z : tests) ASSERT_LE((samples[k].u - pred).dot(samples[k].u - z), 1e-10);
    }
  }
}

TEST(SimulateProperties, RateIndependenceAndOddSymmetry) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> dt(0.01, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = build_geometry(oracle::random_network(rng, 5, 7));
    const Signal sig = oracle::random_signal(rng, 10, 4.0);
    std::vector<double> times{0.0};
    for (std::size_t k = 1; k < sig.size(); ++k) times.push_back(times.back() + dt(rng));
    const auto a = simulate(g, sig);
    const auto b = simulate(g, sig.retimed(times));
    const auto c = simulate(g, sig.negated());
    ASSERT_EQ(a.size(), b.size());
    ASSERT_EQ(a.size(), c.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      ASSERT_LE((a[k].sigma - b[k].sigma).cwiseAbs().maxCoeff(), 1e-10);
      ASSERT_LE((a[k].sigma + c[k].sigma).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

// Catch-up is exact while the active faces only grow within a step, so the
// bridge cycle (which releases faces after reversals) is where the O(dt)
// error shows. Per-halving ratios are erratic because events fall at
// different positions inside a step; the error stays under C dt.
TEST(SimulateProperties, FirstOrderConvergenceEnvelope) {
  const auto g = build_geometry(SpringNetwork(
      4, {{1, 2, 2.82, 2.09}, {1, 3, 0.97, 1.52}, {2, 3, 2.34, 0.53}, {2, 4, 1.69, 2.83}, {3, 4, 2.96, 0.53}}));
  const double l = 2.868;
  const Signal sig({{0, 0}, {1, l}, {2, -0.35 * l}, {3, 0.6 * l}, {4, -l}});
  const double h = g.halfwidths.minCoeff();
  SimulationOptions ref_opts;
  ref_opts.max_dg = h / 12800.0;
  const auto ref = simulate(g, sig, ref_opts);
  auto error = [&](double div) {
    SimulationOptions opts;
    opts.max_dg = h / div;
    // Breakpoints are the samples both runs share exactly.
    std::vector<Eigen::VectorXd> coarse;
    for (const auto& s : simulate(g, sig, opts))
      if (s.breakpoint) coarse.push_back(s.u);
    double worst = 0.0;
    std::size_t k = 0;
    for (const auto& s : ref)
      if (s.breakpoint) worst = std::max(worst, (coarse[k++] - s.u).cwiseAbs().maxCoeff());
    return worst;
  };
  const double c = error(50.0) * 50.0;
  EXPECT_GT(c, 1e-3);
  for (double div : {100.0, 200.0, 400.0, 800.0}) EXPECT_LE(error(div) * div, 2.0 * c) << div;
  EXPECT_LE(error(800.0), error(50.0) / 8.0);
}
