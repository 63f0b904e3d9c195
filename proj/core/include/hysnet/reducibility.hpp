#pragma once

// When does a spring network behave like a single PI operator? Geometric
// checks on the loading polyline, effective loading curves per spring,
// closed forms for linear connections, series-parallel graph reduction and
// generators of weakly perturbed linear networks.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hysnet/loading_curve.hpp"
#include "hysnet/loading_trace.hpp"
#include "hysnet/network.hpp"

namespace hysnet {

struct Witness {
  std::string condition;  ///< "nested_faces", "unit_dim_drops", ...
  int k = -1;             ///< vertex or link index, -1 if not applicable
  int coordinate = -1;    ///< spring index, -1 if not applicable
  double margin = 0.0;    ///< signed slack, negative when violated
  std::string detail;
};

struct ReducibilityReport {
  bool nested_faces = false;
  bool unit_dim_drops = false;
  bool interior_vertices = false;
  bool omega_contained = false;
  bool invertible = false;
  bool overall = false;
  std::vector<Witness> witnesses;
};

struct CheckOptions {
  double tol = 1e-9;
  double rank_tol = 1e-10;
};

/// Evaluate the reducibility conditions on a saturated trace. The faces
/// A_0 = {} , A_1, ..., A_{l-1} are the constraints tight along each link.
ReducibilityReport check_reducibility(const ConfigurationGeometry& geom, const PolylineTrace& trace,
                                  const CheckOptions& opts = {});

/// sum_k |B_k - B_{k-1}|_c <= halfwidth_c + tol * max(1, halfwidth_c) for
/// every coordinate c. `points` is B_0 .. B_l.
bool omega_contained(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& halfwidths,
                     double tol = 1e-9);
bool omega_contained(const PolylineTrace& trace, const ConfigurationGeometry& geom, double tol = 1e-9);

struct EffectiveCurves {
  std::vector<LoadingCurve> springs;  ///< canonical spring order
  LoadingCurve reaction;              ///< loading curve of -R = sum of sigma_1j
  bool equivalent = false;            ///< the trace passed check_reducibility
};

/// phi_c(d_k) = sqrt(a_c) B_k,c, linear between. Zero-length links are
/// skipped.
EffectiveCurves effective_pi_curves(const ConfigurationGeometry& geom, const PolylineTrace& trace,
                                    const CheckOptions& opts = {});

struct EdgeParams {
  double a;
  double r;
};

/// Parallel branches between nodes 1 and N. Branch n runs
/// 1 -> i_n + 1 -> i_n + 2 -> ... -> i_{n+1} -> N, so it has
/// i_{n+1} - i_n + 1 edges, listed in that order.
struct LinearConnectionSpec {
  std::vector<int> indices;  ///< 1 = i_0 < i_1 < ... < i_S = N - 1
  std::vector<std::vector<EdgeParams>> branches;

  int node_count() const { return indices.empty() ? 0 : indices.back() + 1; }
  void validate() const;
  SpringNetwork to_network() const;
};

struct EffectiveStop {
  double a;
  double r;
  double rho;
};

/// Series connection of Prandtl springs: harmonic stiffness, minimal yield
/// force.
EffectiveStop series_effective(std::span<const EdgeParams> edges);

struct LinearEffectiveParams {
  std::vector<EffectiveStop> stops;  ///< one per branch
  bool distinct_thresholds = true;   ///< no equal r inside a branch
  bool distinct_ratios = true;       ///< no equal r/a between branches
  bool generic = true;
  std::vector<std::string> ties;
};

/// Values are considered equal within `rel_tol`.
LinearEffectiveParams linear_effective_params(const LinearConnectionSpec& spec, double rel_tol = 1e-12);

/// Collapse the network to a single edge between 1 and N by merging parallel
/// edges (curve sum), eliminating interior vertices of degree 2 (series
/// rule) and deleting interior vertices of degree 1. Returns the loading
/// curve of -R, or nothing if the graph does not reduce.
std::optional<LoadingCurve> reduce_graph(const SpringNetwork& net);

struct LinearConnectionRanges {
  int branches_min = 2;
  int branches_max = 4;
  int interior_max = 3;  ///< extra interior nodes per branch beyond the first
  double a_min = 0.5, a_max = 4.0;
  double r_min = 0.5, r_max = 4.0;
};

/// Random linear connection, redrawn until both genericity conditions hold.
LinearConnectionSpec random_linear_connection(std::mt19937_64& rng, const LinearConnectionRanges& ranges = {});

/// Adds `count` springs between random node pairs other than (1, N), with
/// stiffness in [a_extra / 2, a_extra] and yield force in [r_th, 2 r_th].
SpringNetwork add_weak_springs(const SpringNetwork& base, int count, double a_extra, double r_th,
                               std::mt19937_64& rng);

}  // namespace hysnet
