#pragma once

// Exact solution u*(d) of the sweeping process for the monotone input
// g(t) = t started from u = 0: a polyline B_0 B_1 ... B_l through faces of
// Pi cap V, and the vector counterpart of the scalar memory formula built
// on it.

#include <vector>

#include <Eigen/Dense>

#include "hysnet/hysteresis.hpp"
#include "hysnet/network.hpp"

namespace hysnet {

/// Box constraint u_index = side * halfwidth_index, side = +1 or -1.
struct SignedConstraint {
  int index;
  int side;

  friend bool operator==(const SignedConstraint&, const SignedConstraint&) = default;
  friend auto operator<=>(const SignedConstraint&, const SignedConstraint&) = default;
};

using ActiveSet = std::vector<SignedConstraint>;  // sorted

struct TraceOptions {
  double tie_rel_tol = 1e-9;      ///< hits within this relative distance are simultaneous
  double saturation_rel_tol = 1e-10;  ///< |f_k| <= this * |f_0| means saturated
  double rank_tol = 1e-10;
  int max_links = 0;  ///< 0 selects 4 m + 16
};

struct PolylineTrace {
  std::vector<Eigen::VectorXd> points;      ///< B_0 .. B_l
  std::vector<double> distances;            ///< d_0 = 0 .. d_l
  std::vector<Eigen::VectorXd> directions;  ///< velocity on link k, k < l
  std::vector<ActiveSet> faces;             ///< constraints tight along link k, k < l
  std::vector<ActiveSet> tight;             ///< constraints tight at B_k
  std::vector<ActiveSet> hits;              ///< constraints newly hit at B_k (empty for k = 0)
  bool saturated = false;

  std::size_t links() const noexcept { return directions.size(); }
  /// L = d_l.
  double horizon() const noexcept { return distances.back(); }
};

/// Ray tracing from 0 along f0. On each face the velocity is the projection
/// of f0 onto the tangent cone of Pi cap V, so constraints may also be
/// released; the checker reports that as a failure of face nesting.
PolylineTrace trace_loading_polyline(const ConfigurationGeometry& geom, const TraceOptions& opts = {});

/// u*(d) with odd extension to d < 0. Strict mode requires |d| <= L;
/// Extend mode returns +-B_l beyond it.
Eigen::VectorXd u_star_eval(const PolylineTrace& trace, double d, Horizon mode = Horizon::Strict);

/// u*(G1) + 2 sum_{i>=2} u*((G_i - G_{i-1}) / 2).
Eigen::VectorXd vector_memory_evaluate(const PolylineTrace& trace, const MainExtremaMemory& mem,
                                       Horizon mode = Horizon::Strict);

}  // namespace hysnet
