#include "hysnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hysnet/error.hpp"
#include "hysnet/linalg.hpp"

namespace hysnet {

namespace {

bool is_connected(int n, std::span<const Spring> springs) {
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  };
  int components = n;
  for (const auto& s : springs) {
    const int a = find(s.i);
    const int b = find(s.j);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

// Elongations of all springs for a unit displacement of `node`.
Eigen::VectorXd displacement_generator(std::span<const Spring> springs, int node) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(springs.size()));
  for (std::size_t k = 0; k < springs.size(); ++k) {
    if (springs[k].j == node) d(static_cast<Eigen::Index>(k)) = 1.0;
    if (springs[k].i == node) d(static_cast<Eigen::Index>(k)) = -1.0;
  }
  return d;
}

}  // namespace

SpringNetwork::SpringNetwork(int node_count, std::vector<Spring> springs)
    : node_count_(node_count), springs_(std::move(springs)) {
  if (node_count_ < 2) throw InvalidArgument("network needs at least two nodes");
  for (std::size_t k = 0; k < springs_.size(); ++k) {
    auto& s = springs_[k];
    const std::string where = "spring " + std::to_string(k) + ": ";
    if (s.i < 1 || s.i > node_count_ || s.j < 1 || s.j > node_count_)
      throw InvalidArgument(where + "node index out of range");
    if (s.i == s.j) throw InvalidArgument(where + "spring connects a node to itself");
    if (!(s.a > 0.0) || !std::isfinite(s.a)) throw InvalidArgument(where + "stiffness must be positive");
    if (!(s.r > 0.0) || !std::isfinite(s.r)) throw InvalidArgument(where + "yield force must be positive");
    if (s.i > s.j) std::swap(s.i, s.j);
    if (s.i == 1 && s.j == node_count_)
      throw InvalidArgument(where + "the driven pair (1, N) may not carry a spring");
  }
  std::stable_sort(springs_.begin(), springs_.end(), [](const Spring& x, const Spring& y) {
    return std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  if (!is_connected(node_count_, springs_)) throw InvalidArgument("spring graph is not connected");
}

std::string SpringNetwork::label(std::size_t k) const {
  const auto& s = springs_.at(k);
  return std::to_string(s.i) + "_" + std::to_string(s.j);
}

bool ConfigurationGeometry::is_admissible(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != m()) return false;
  for (Eigen::Index c = 0; c < m(); ++c)
    if (std::abs(x(c)) > halfwidths(c) + tol * std::max(1.0, halfwidths(c))) return false;
  return (x - project_v(x)).norm() <= tol * std::max(1.0, x.norm());
}

ConfigurationGeometry build_geometry(const SpringNetwork& net, const GeometryOptions& opts) {
  ConfigurationGeometry g;
  const auto springs = net.springs();
  const auto m = static_cast<Eigen::Index>(springs.size());
  const int n = net.node_count();
  g.node_count = n;
  g.springs.assign(springs.begin(), springs.end());
  g.sqrt_a.resize(m);
  g.halfwidths.resize(m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto& s = springs[static_cast<std::size_t>(c)];
    g.sqrt_a(c) = std::sqrt(s.a);
    g.halfwidths(c) = s.r / g.sqrt_a(c);
  }

  g.W.resize(m, std::max(0, n - 2));
  for (int node = 2; node <= n - 1; ++node) g.W.col(node - 2) = displacement_generator(springs, node);
  g.k0 = displacement_generator(springs, n);

  const Eigen::MatrixXd u_basis = g.sqrt_a.asDiagonal() * g.W;
  g.V = linalg::orthonormal_complement(u_basis, opts.rank_tol);

  const Eigen::VectorXd drive = g.sqrt_a.cwiseProduct(g.k0);
  g.f0 = g.project_v(drive);
  if (g.f0.norm() <= opts.rank_tol * std::max(1.0, drive.norm()))
    throw InvalidArgument("degenerate drive: the constraint does no work on the network (f0 = 0)");
  return g;
}

StressState stresses_and_reaction(const ConfigurationGeometry& geom, const Eigen::VectorXd& u,
                                  double tol) {
  if (!geom.is_admissible(u, tol)) throw InfeasibleState("state lies outside the admissible polytope");
  StressState out;
  out.sigma = geom.sqrt_a.cwiseProduct(u);
  double sum = 0.0;
  for (std::size_t k = 0; k < geom.springs.size(); ++k)
    if (geom.springs[k].i == 1) sum += out.sigma(static_cast<Eigen::Index>(k));
  out.reaction = -sum;
  return out;
}

bool validate_balance(const ConfigurationGeometry& geom, const Eigen::VectorXd& sigma, double tol) {
  const double scale = tol * sigma.norm();
  for (Eigen::Index k = 0; k < geom.W.cols(); ++k)
    if (std::abs(geom.W.col(k).dot(sigma)) > scale) return false;
  return true;
}

}  // namespace hysnet
