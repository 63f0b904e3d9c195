#include "hysnet/sweeping.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hysnet/error.hpp"

namespace hysnet {

namespace {

// Signed list of clamped coordinates: +1 upper bound, -1 lower bound, 0 free.
using BoxPattern = std::vector<signed char>;

BoxPattern clamp_into_box(const Eigen::VectorXd& hw, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  BoxPattern pattern(static_cast<std::size_t>(in.size()), 0);
  out = in;
  for (Eigen::Index c = 0; c < in.size(); ++c) {
    if (in(c) > hw(c)) {
      out(c) = hw(c);
      pattern[static_cast<std::size_t>(c)] = 1;
    } else if (in(c) < -hw(c)) {
      out(c) = -hw(c);
      pattern[static_cast<std::size_t>(c)] = -1;
    }
  }
  return pattern;
}

// Projection of p onto {x in V : x_c = s_c hw_c for the clamped coordinates},
// returned only if it satisfies the KKT conditions of the projection onto
// Pi cap V: feasible, and nonnegative multipliers on the fixed bounds.
std::optional<Eigen::VectorXd> polish_on_pattern(const ConfigurationGeometry& geom,
                                                 const Eigen::VectorXd& p,
                                                 const BoxPattern& pattern) {
  const Eigen::MatrixXd& v = geom.V;
  const Eigen::VectorXd& hw = geom.halfwidths;
  std::vector<Eigen::Index> fixed;
  for (Eigen::Index c = 0; c < p.size(); ++c)
    if (pattern[static_cast<std::size_t>(c)] != 0) fixed.push_back(c);

  const Eigen::VectorXd z0 = v.transpose() * p;
  Eigen::VectorXd z = z0;
  Eigen::VectorXd mu;
  const auto k = static_cast<Eigen::Index>(fixed.size());
  if (k > 0) {
    Eigen::MatrixXd va(k, v.cols());
    Eigen::VectorXd rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const Eigen::Index c = fixed[static_cast<std::size_t>(r)];
      va.row(r) = v.row(c);
      rhs(r) = pattern[static_cast<std::size_t>(c)] * hw(c) - v.row(c).dot(z0);
    }
    const Eigen::MatrixXd gram = va * va.transpose();
    mu = gram.completeOrthogonalDecomposition().solve(rhs);
    z = z0 + va.transpose() * mu;
    const Eigen::VectorXd resid = va * z - (rhs + va * z0);
    if (resid.lpNorm<Eigen::Infinity>() > 1e-11 * std::max(1.0, hw.maxCoeff())) return std::nullopt;
  }
  Eigen::VectorXd x = v * z;

  const double scale = std::max(1.0, p.norm());
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::Index c = fixed[static_cast<std::size_t>(r)];
    const double lambda = -pattern[static_cast<std::size_t>(c)] * mu(r);
    if (lambda < -1e-11 * scale) return std::nullopt;
    x(c) = pattern[static_cast<std::size_t>(c)] * hw(c);
  }
  for (Eigen::Index c = 0; c < x.size(); ++c)
    if (std::abs(x(c)) > hw(c) * (1.0 + 1e-12)) return std::nullopt;
  return x;
}

}  // namespace

ProjectionResult project_polytope_detailed(const ConfigurationGeometry& geom,
                                           const Eigen::VectorXd& p,
                                           const ProjectionOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("projection tolerance must be positive");
  if (p.size() != geom.m()) throw InvalidArgument("projection: vector size differs from spring count");
  const Eigen::VectorXd& hw = geom.halfwidths;

  ProjectionResult res;
  Eigen::VectorXd x = p;
  Eigen::VectorXd box_corr = Eigen::VectorXd::Zero(p.size());
  Eigen::VectorXd sub_corr = Eigen::VectorXd::Zero(p.size());
  Eigen::VectorXd y;
  BoxPattern last_tried;
  double change = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const BoxPattern pattern = clamp_into_box(hw, x + box_corr, y);
    box_corr = x + box_corr - y;
    const Eigen::VectorXd x_next = geom.project_v(y + sub_corr);
    sub_corr = y + sub_corr - x_next;
    // Successive iterates can coincide while the corrections still move, so
    // also require the box and subspace iterates to agree.
    change = std::max((x_next - x).norm(), (x_next - y).norm());
    x = x_next;
    res.iterations = it;
    if (change < opts.tol) {
      res.x = x;
      return res;
    }
    if (opts.polish && (it == 2 || it % opts.polish_every == 0) && pattern != last_tried) {
      last_tried = pattern;
      if (auto polished = polish_on_pattern(geom, p, pattern)) {
        res.x = std::move(*polished);
        res.polished = true;
        return res;
      }
    }
  }
  throw ConvergenceError("Dykstra projection did not converge", change);
}

Eigen::VectorXd project_polytope(const ConfigurationGeometry& geom, const Eigen::VectorXd& p,
                                 double tol) {
  ProjectionOptions opts;
  opts.tol = tol;
  return project_polytope_detailed(geom, p, opts).x;
}

SweepingState initial_state(const ConfigurationGeometry& geom) {
  return SweepingState{Eigen::VectorXd::Zero(geom.m()), 0.0, 0.0};
}

SweepingState sweep_step(const SweepingState& state, const ConfigurationGeometry& geom,
                         double delta_g, const ProjectionOptions& opts) {
  SweepingState next = state;
  next.g = state.g + delta_g;
  if (delta_g == 0.0) return next;
  next.u = project_polytope_detailed(geom, state.u + delta_g * geom.f0, opts).x;
  return next;
}

double default_max_dg(const ConfigurationGeometry& geom) { return geom.halfwidths.minCoeff() / 100.0; }

std::vector<SimulationSample> simulate(const ConfigurationGeometry& geom, const Signal& signal,
                                       const SimulationOptions& opts) {
  const double max_dg = opts.max_dg > 0.0 ? opts.max_dg : default_max_dg(geom);
  std::vector<SimulationSample> out;
  auto emit = [&](const SweepingState& s, bool breakpoint) {
    StressState st = stresses_and_reaction(geom, s.u, 1e-8);
    out.push_back({s.t, s.g, s.u, std::move(st.sigma), st.reaction, breakpoint});
  };

  SweepingState state = initial_state(geom);
  state.t = signal[0].t;
  emit(state, true);
  for (std::size_t k = 1; k < signal.size(); ++k) {
    const auto& a = signal[k - 1];
    const auto& b = signal[k];
    const double dg = b.g - a.g;
    const auto steps = std::max<long long>(1, static_cast<long long>(std::ceil(std::abs(dg) / max_dg)));
    double g_prev = a.g;
    for (long long j = 1; j <= steps; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(steps);
      const double g_next = (j == steps) ? b.g : a.g + dg * frac;
      state = sweep_step(state, geom, g_next - g_prev, opts.projection);
      state.g = g_next;
      state.t = (j == steps) ? b.t : a.t + (b.t - a.t) * frac;
      g_prev = g_next;
      emit(state, j == steps);
    }
  }
  return out;
}

}  // namespace hysnet
