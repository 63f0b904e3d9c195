#pragma once

// Catch-up time stepping of the stop-type sweeping process
//   -du/dt + f0 dg/dt in N_{Pi cap V}(u),  u(0) = 0,
// with Euclidean projections onto the polytope Pi cap V.

#include <vector>

#include <Eigen/Dense>

#include "hysnet/hysteresis.hpp"
#include "hysnet/network.hpp"

namespace hysnet {

struct ProjectionOptions {
  double tol = 1e-10;       ///< stop when successive iterates, and the box and subspace iterates, differ by less
  int max_iter = 200000;
  /// Every `polish_every` iterations, try to finish exactly on the box
  /// constraints Dykstra has identified, accepting only a KKT point.
  bool polish = true;
  int polish_every = 8;
};

struct ProjectionResult {
  Eigen::VectorXd x;
  int iterations = 0;
  bool polished = false;
};

/// Euclidean projection of p onto Pi cap V by Dykstra's alternating
/// projections between the box and the subspace. Throws ConvergenceError
/// when the iteration cap is hit.
ProjectionResult project_polytope_detailed(const ConfigurationGeometry& geom,
                                           const Eigen::VectorXd& p,
                                           const ProjectionOptions& opts = {});

Eigen::VectorXd project_polytope(const ConfigurationGeometry& geom, const Eigen::VectorXd& p,
                                 double tol = 1e-10);

struct SweepingState {
  Eigen::VectorXd u;
  double g = 0.0;
  double t = 0.0;
};

/// Relaxed initial state u = 0 at t = 0.
SweepingState initial_state(const ConfigurationGeometry& geom);

/// One implicit catch-up step: u' = proj(u + f0 * delta_g).
SweepingState sweep_step(const SweepingState& state, const ConfigurationGeometry& geom,
                         double delta_g, const ProjectionOptions& opts = {});

struct SimulationOptions {
  /// Largest input increment per catch-up step; <= 0 selects
  /// min(halfwidths) / 100.
  double max_dg = 0.0;
  ProjectionOptions projection;
};

struct SimulationSample {
  double t;
  double g;
  Eigen::VectorXd u;
  Eigen::VectorXd sigma;
  double reaction;
  bool breakpoint;  ///< sample coincides with a signal breakpoint
};

/// Default step control: min(halfwidths) / 100.
double default_max_dg(const ConfigurationGeometry& geom);

/// Integrate from the relaxed state along `signal`. Every monotone piece of
/// the signal is split into ceil(|dg| / max_dg) equal input increments, so
/// the sample sequence depends only on the input path and not on its timing.
std::vector<SimulationSample> simulate(const ConfigurationGeometry& geom, const Signal& signal,
                                       const SimulationOptions& opts = {});

}  // namespace hysnet
