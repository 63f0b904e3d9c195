#include "hysnet/loading_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hysnet/error.hpp"
#include "hysnet/linalg.hpp"

namespace hysnet {

namespace {

// Projection of f0 onto the tangent cone {f in V : s_c f_c <= 0, c tight}.
// By the Moreau decomposition this is f0 minus its projection onto the polar
// cone spanned by s_c P_V e_c, which is a nonnegative least-squares problem.
Eigen::VectorXd tangent_direction(const ConfigurationGeometry& geom, const ActiveSet& tight) {
  if (tight.empty()) return geom.f0;
  const auto k = static_cast<Eigen::Index>(tight.size());
  Eigen::MatrixXd normals(geom.m(), k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto& c = tight[static_cast<std::size_t>(r)];
    normals.col(r) = c.side * geom.V * geom.V.row(c.index).transpose();
  }
  const Eigen::VectorXd lambda = linalg::nnls(normals, geom.f0);
  return geom.f0 - normals * lambda;
}

}  // namespace

PolylineTrace trace_loading_polyline(const ConfigurationGeometry& geom, const TraceOptions& opts) {
  const Eigen::Index m = geom.m();
  const double f0_norm = geom.f0.norm();
  if (!(f0_norm > 0.0)) throw InvalidArgument("loading trace needs a nonzero drive f0");
  const Eigen::VectorXd& hw = geom.halfwidths;
  const double flat = 1e-11 * f0_norm;  // tight coordinates moving slower than this stay in the face
  const int cap = opts.max_links > 0 ? opts.max_links : static_cast<int>(4 * m + 16);

  PolylineTrace tr;
  tr.points.push_back(Eigen::VectorXd::Zero(m));
  tr.distances.push_back(0.0);
  tr.tight.emplace_back();
  tr.hits.emplace_back();

  for (int link = 0;; ++link) {
    const Eigen::VectorXd& x = tr.points.back();
    const ActiveSet& tight = tr.tight.back();
    const Eigen::VectorXd f = tangent_direction(geom, tight);
    if (f.norm() <= opts.saturation_rel_tol * f0_norm) {
      tr.saturated = true;
      return tr;
    }
    if (link >= cap) throw ConvergenceError("loading trace: link cap reached before saturation", f.norm());

    ActiveSet face;
    for (const auto& c : tight)
      if (std::abs(f(c.index)) <= flat) face.push_back(c);
    auto in_face = [&](Eigen::Index c) {
      return std::any_of(face.begin(), face.end(), [&](const SignedConstraint& s) { return s.index == c; });
    };

    double step = std::numeric_limits<double>::infinity();
    Eigen::VectorXd hit_at = Eigen::VectorXd::Constant(m, std::numeric_limits<double>::infinity());
    for (Eigen::Index c = 0; c < m; ++c) {
      // No magnitude cut here: with very soft springs the links get long
      // enough for tiny velocity components to reach a bound.
      if (in_face(c) || f(c) == 0.0) continue;
      const double bound = f(c) > 0.0 ? hw(c) : -hw(c);
      hit_at(c) = std::max(0.0, (bound - x(c)) / f(c));
      step = std::min(step, hit_at(c));
    }
    if (!std::isfinite(step)) throw ConvergenceError("loading trace: unbounded link", f.norm());

    Eigen::VectorXd next = x + step * f;
    ActiveSet hits;
    for (Eigen::Index c = 0; c < m; ++c) {
      if (hit_at(c) <= step * (1.0 + opts.tie_rel_tol)) {
        const int side = f(c) > 0.0 ? 1 : -1;
        hits.push_back({static_cast<int>(c), side});
        next(c) = side * hw(c);
      }
    }
    for (const auto& c : face) next(c.index) = c.side * hw(c.index);

    ActiveSet now = face;
    now.insert(now.end(), hits.begin(), hits.end());
    std::sort(now.begin(), now.end());

    tr.directions.push_back(f);
    tr.faces.push_back(std::move(face));
    tr.points.push_back(std::move(next));
    tr.distances.push_back(tr.distances.back() + step);
    tr.tight.push_back(std::move(now));
    tr.hits.push_back(std::move(hits));
  }
}

Eigen::VectorXd u_star_eval(const PolylineTrace& trace, double d, Horizon mode) {
  const double end = trace.horizon();
  const double a = std::abs(d);
  const double sign = d < 0.0 ? -1.0 : 1.0;
  if (a > end) {
    if (mode == Horizon::Strict || !trace.saturated)
      throw HorizonError("u*: argument beyond the loading-curve horizon", d, end);
    return sign * trace.points.back();
  }
  const auto it = std::upper_bound(trace.distances.begin(), trace.distances.end(), a);
  if (it == trace.distances.end()) return sign * trace.points.back();
  const auto k = static_cast<std::size_t>(it - trace.distances.begin());  // d_{k-1} <= a < d_k
  const double d0 = trace.distances[k - 1];
  const double d1 = trace.distances[k];
  const double w = (a - d0) / (d1 - d0);
  return sign * ((1.0 - w) * trace.points[k - 1] + w * trace.points[k]);
}

Eigen::VectorXd vector_memory_evaluate(const PolylineTrace& trace, const MainExtremaMemory& mem,
                                       Horizon mode) {
  const auto g = mem.extrema();
  Eigen::VectorXd u = u_star_eval(trace, g[0], mode);
  for (std::size_t i = 1; i < g.size(); ++i) u += 2.0 * u_star_eval(trace, (g[i] - g[i - 1]) / 2.0, mode);
  return u;
}

}  // namespace hysnet
