#pragma once

// Reference implementations used only by the tests. Each one recomputes a
// library result by a different route: plain loops instead of the memory
// formula, an active-set QP instead of Dykstra, enumeration instead of
// closed forms.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hysnet/hysteresis.hpp"
#include "hysnet/loading_trace.hpp"
#include "hysnet/network.hpp"

namespace oracle {

// ---------------------------------------------------------------- scalar

// R at every input sample of a relaxed weighted stop sum, one clamp per stop.
inline std::vector<double> stop_sum(const std::vector<double>& weights, const std::vector<double>& thresholds,
                                    const std::vector<double>& g) {
  std::vector<double> e(weights.size(), 0.0);
  std::vector<double> out;
  double prev = 0.0;
  for (double x : g) {
    double r = 0.0;
    for (std::size_t n = 0; n < e.size(); ++n) {
      e[n] = std::clamp(e[n] + (x - prev), -thresholds[n], thresholds[n]);
      r += weights[n] * e[n];
    }
    prev = x;
    out.push_back(r);
  }
  return out;
}

inline hysnet::PiOperator random_pi(std::mt19937_64& rng, int max_stops = 10) {
  std::uniform_int_distribution<int> count(1, max_stops);
  std::uniform_real_distribution<double> w(0.05, 3.0);
  std::uniform_real_distribution<double> gap(0.05, 1.5);
  std::vector<hysnet::WeightedStop> stops;
  double rho = 0.0;
  const int k = count(rng);
  for (int n = 0; n < k; ++n) {
    rho += gap(rng);
    stops.push_back({w(rng), rho});
  }
  return hysnet::PiOperator(std::move(stops));
}

// Random breakpoints in [-amp, amp] with strictly increasing random times.
inline hysnet::Signal random_signal(std::mt19937_64& rng, int breakpoints, double amp) {
  std::uniform_real_distribution<double> g(-amp, amp);
  std::uniform_real_distribution<double> dt(0.1, 2.0);
  std::vector<hysnet::SignalPoint> pts{{0.0, 0.0}};
  for (int k = 1; k < breakpoints; ++k) pts.push_back({pts.back().t + dt(rng), g(rng)});
  return hysnet::Signal(std::move(pts));
}

// -------------------------------------------------------------- networks

// Connected multigraph on n nodes with m >= n - 1 springs, never (1, n).
inline hysnet::SpringNetwork random_network(std::mt19937_64& rng, int n, int m, double lo = 0.5, double hi = 3.0) {
  std::uniform_real_distribution<double> par(lo, hi);
  for (;;) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k + 1;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<hysnet::Spring> springs;
    bool bad = false;
    for (int k = 1; k < n; ++k) {
      std::uniform_int_distribution<int> pick(0, k - 1);
      const int u = order[static_cast<std::size_t>(k)];
      const int v = order[static_cast<std::size_t>(pick(rng))];
      if (std::min(u, v) == 1 && std::max(u, v) == n) bad = true;
      springs.push_back({u, v, par(rng), par(rng)});
    }
    if (bad) continue;
    std::uniform_int_distribution<int> node(1, n);
    while (static_cast<int>(springs.size()) < m) {
      const int u = node(rng);
      const int v = node(rng);
      if (u == v || (std::min(u, v) == 1 && std::max(u, v) == n)) continue;
      springs.push_back({u, v, par(rng), par(rng)});
    }
    return hysnet::SpringNetwork(n, std::move(springs));
  }
}

// ------------------------------------------------------------ projection

// Projection onto Pi cap V by a primal active-set method in the coordinates
// z of V (x = V z): min 1/2 |z - z0|^2 subject to s_c V_c z <= hw_c.
inline Eigen::VectorXd qp_active_set(const hysnet::ConfigurationGeometry& geom, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd& v = geom.V;
  const Eigen::VectorXd& hw = geom.halfwidths;
  const Eigen::Index m = geom.m();
  const Eigen::VectorXd z0 = v.transpose() * p;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(v.cols());
  std::vector<std::pair<Eigen::Index, int>> work;  // (coordinate, side)

  auto rows = [&]() {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(work.size()), v.cols());
    for (std::size_t r = 0; r < work.size(); ++r)
      a.row(static_cast<Eigen::Index>(r)) = work[r].second * v.row(work[r].first);
    return a;
  };
  const double eps = 1e-13 * std::max(1.0, z0.norm());
  for (int iter = 0; iter < 10000; ++iter) {
    const Eigen::MatrixXd a = rows();
    Eigen::VectorXd d = z0 - z;
    if (a.rows() > 0) {
      const Eigen::VectorXd mu = (a * a.transpose()).completeOrthogonalDecomposition().solve(a * d);
      d -= a.transpose() * mu;
    }
    if (d.norm() <= eps) {
      if (a.rows() == 0) break;
      const Eigen::VectorXd lambda = a.transpose().completeOrthogonalDecomposition().solve(z0 - z);
      Eigen::Index worst;
      if (lambda.minCoeff(&worst) >= -1e-12) break;
      work.erase(work.begin() + worst);
      continue;
    }
    double alpha = 1.0;
    Eigen::Index block = -1;
    int block_side = 0;
    for (Eigen::Index c = 0; c < m; ++c) {
      for (int side : {1, -1}) {
        if (std::find(work.begin(), work.end(), std::pair(c, side)) != work.end()) continue;
        const double rate = side * v.row(c).dot(d);
        if (rate <= 1e-15) continue;
        const double room = hw(c) - side * v.row(c).dot(z);
        const double t = std::max(0.0, room / rate);
        if (t < alpha) {
          alpha = t;
          block = c;
          block_side = side;
        }
      }
    }
    z += alpha * d;
    if (block >= 0) work.emplace_back(block, block_side);
  }
  return v * z;
}

// Projection by enumerating every signed active set (3^m candidates).
// Practical for m <= 6.
inline Eigen::VectorXd qp_bruteforce(const hysnet::ConfigurationGeometry& geom, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd& v = geom.V;
  const Eigen::VectorXd& hw = geom.halfwidths;
  const auto m = static_cast<int>(geom.m());
  int total = 1;
  for (int k = 0; k < m; ++k) total *= 3;
  const Eigen::VectorXd z0 = v.transpose() * p;
  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int code = 0; code < total; ++code) {
    std::vector<int> side(static_cast<std::size_t>(m));
    int c = code;
    std::vector<int> fixed;
    for (int k = 0; k < m; ++k) {
      side[static_cast<std::size_t>(k)] = c % 3 - 1;
      c /= 3;
      if (side[static_cast<std::size_t>(k)] != 0) fixed.push_back(k);
    }
    Eigen::VectorXd z = z0;
    if (!fixed.empty()) {
      Eigen::MatrixXd a(static_cast<Eigen::Index>(fixed.size()), v.cols());
      Eigen::VectorXd b(static_cast<Eigen::Index>(fixed.size()));
      for (std::size_t r = 0; r < fixed.size(); ++r) {
        a.row(static_cast<Eigen::Index>(r)) = v.row(fixed[r]);
        b(static_cast<Eigen::Index>(r)) = side[static_cast<std::size_t>(fixed[r])] * hw(fixed[r]);
      }
      const Eigen::VectorXd mu = (a * a.transpose()).completeOrthogonalDecomposition().solve(b - a * z0);
      z = z0 + a.transpose() * mu;
      if ((a * z - b).norm() > 1e-9) continue;
    }
    const Eigen::VectorXd x = v * z;
    bool feasible = true;
    for (int k = 0; k < m; ++k)
      if (std::abs(x(k)) > hw(k) * (1 + 1e-12) + 1e-12) feasible = false;
    if (!feasible) continue;
    // The projection is the candidate of its own face and every candidate is
    // a point of Pi cap V, so the closest feasible one wins.
    const double dist = (x - p).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

// ------------------------------------------------------------ trace / Omega

inline double positive_part(double a) { return std::max(a, 0.0); }

// xi_k of the decomposition u = sum_k xi_k (B_k - B_{k-1}) / (d_k - d_{k-1})
// for a memory with G1 >= 0; the case G1 < 0 follows by odd symmetry.
inline std::vector<double> xi_coefficients(const hysnet::PolylineTrace& tr, std::span<const double> g) {
  const double sign = g[0] < 0.0 ? -1.0 : 1.0;
  std::vector<double> xi(tr.links(), 0.0);
  for (std::size_t k = 1; k <= tr.links(); ++k) {
    const double dk = tr.distances[k];
    const double dk1 = tr.distances[k - 1];
    double s = positive_part(std::min(sign * g[0], dk) - dk1);
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double alt = (i % 2 == 1) ? -1.0 : 1.0;  // G_2 - G_1 enters with a minus sign
      s += alt * positive_part(std::min(std::abs(g[i] - g[i - 1]), 2.0 * dk) - 2.0 * dk1);
    }
    xi[k - 1] = sign * s;
  }
  return xi;
}

inline Eigen::VectorXd xi_decomposition(const hysnet::PolylineTrace& tr, std::span<const double> g) {
  const auto xi = xi_coefficients(tr, g);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(tr.points[0].size());
  for (std::size_t k = 1; k <= tr.links(); ++k)
    u += xi[k - 1] * (tr.points[k] - tr.points[k - 1]) / (tr.distances[k] - tr.distances[k - 1]);
  return u;
}

// Omega = {sum_k tau_k (B_k - B_{k-1}), |tau_k| <= 1} is a zonotope whose
// vertices are among the 2^l sign choices; test each against the box.
inline bool omega_by_vertices(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& hw, double tol) {
  const std::size_t l = points.size() - 1;
  std::vector<Eigen::VectorXd> links;
  for (std::size_t k = 1; k <= l; ++k) links.push_back(points[k] - points[k - 1]);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(hw.size());
    for (std::size_t k = 0; k < l; ++k) y += ((mask >> k) & 1U) ? links[k] : Eigen::VectorXd(-links[k]);
    for (Eigen::Index c = 0; c < hw.size(); ++c)
      if (std::abs(y(c)) > hw(c) + tol * std::max(1.0, hw(c))) return false;
  }
  return true;
}

}  // namespace oracle
