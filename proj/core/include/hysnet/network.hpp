#pragma once

// Spring networks on a line driven by one moving distance constraint between
// nodes 1 and N, and the rescaled configuration-space geometry of such a
// network: the admissible stress box, the force-balance subspace and the
// projected drive direction.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hysnet {

/// Prandtl spring between nodes i < j (1-based): stiffness a, yield force r.
struct Spring {
  int i;
  int j;
  double a;
  double r;

  double rho() const noexcept { return r / a; }
};

/// Connected multigraph of Prandtl springs on nodes 1..N. The driven pair is
/// always (1, N) and may not carry a spring. Springs are stored in canonical
/// order: by (min node, max node), parallel springs in insertion order. All
/// m-vectors in the library use this order.
class SpringNetwork {
 public:
  SpringNetwork(int node_count, std::vector<Spring> springs);

  int node_count() const noexcept { return node_count_; }
  std::size_t spring_count() const noexcept { return springs_.size(); }
  std::span<const Spring> springs() const noexcept { return springs_; }
  const Spring& spring(std::size_t k) const { return springs_.at(k); }

  /// "i_j" for spring k.
  std::string label(std::size_t k) const;

 private:
  int node_count_;
  std::vector<Spring> springs_;
};

struct GeometryOptions {
  double rank_tol = 1e-10;
};

/// Rescaled geometry u = A^{1/2} e of a network.
///
/// W holds one column per interior node i = 2..N-1: the spring elongations
/// produced by a unit displacement of node i (entries -1, 0, +1). k0 is the
/// same for node N. V is an orthonormal basis of the complement of
/// A^{1/2} W; the admissible set is the box |u_ij| <= halfwidths_ij
/// intersected with span(V), and f0 is the projection of A^{1/2} k0 on it.
struct ConfigurationGeometry {
  int node_count = 0;
  std::vector<Spring> springs;
  Eigen::VectorXd sqrt_a;
  Eigen::VectorXd halfwidths;
  Eigen::MatrixXd W;
  Eigen::MatrixXd V;
  Eigen::VectorXd k0;
  Eigen::VectorXd f0;

  Eigen::Index m() const noexcept { return sqrt_a.size(); }
  Eigen::Index dim_v() const noexcept { return V.cols(); }

  Eigen::VectorXd project_v(const Eigen::VectorXd& x) const { return V * (V.transpose() * x); }

  /// In the box within `tol` (relative to max(1, halfwidth)) and in V within
  /// `tol` (relative to max(1, |x|)).
  bool is_admissible(const Eigen::VectorXd& x, double tol) const;
};

/// Throws InvalidArgument on a zero drive (f0 = 0).
ConfigurationGeometry build_geometry(const SpringNetwork& net, const GeometryOptions& opts = {});

struct StressState {
  Eigen::VectorXd sigma;
  double reaction = 0.0;  ///< R, with R + sum_{(1j)} sigma_1j = 0
};

/// sigma = A^{1/2} u and the constraint reaction. Throws InfeasibleState if
/// u is not admissible within `tol`.
StressState stresses_and_reaction(const ConfigurationGeometry& geom, const Eigen::VectorXd& u,
                                  double tol = 1e-8);

/// Force balance at every interior node: |<sigma, w>| <= tol |sigma| for
/// each column w of W.
bool validate_balance(const ConfigurationGeometry& geom, const Eigen::VectorXd& sigma,
                      double tol = 1e-9);

}  // namespace hysnet
