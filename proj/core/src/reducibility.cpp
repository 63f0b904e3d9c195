#include "hysnet/reducibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hysnet/error.hpp"
#include "hysnet/linalg.hpp"

namespace hysnet {

namespace {

bool contains_index(const ActiveSet& set, Eigen::Index c) {
  return std::any_of(set.begin(), set.end(), [&](const SignedConstraint& s) { return s.index == c; });
}

std::string describe(const ActiveSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < set.size(); ++k) os << (k ? "," : "") << (set[k].side > 0 ? '+' : '-') << set[k].index;
  os << '}';
  return os.str();
}

Eigen::Index normal_rank(const ConfigurationGeometry& geom, const ActiveSet& set, double rank_tol) {
  if (set.empty()) return 0;
  Eigen::MatrixXd n(geom.m(), static_cast<Eigen::Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k)
    n.col(static_cast<Eigen::Index>(k)) = geom.V * geom.V.row(set[k].index).transpose();
  return linalg::numerical_rank(n, rank_tol);
}

bool nearly_equal(double x, double y, double rel_tol) {
  return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
}

LoadingCurve single_stop_curve(double a, double r) { return LoadingCurve({{0.0, 0.0}, {r / a, r}}); }

}  // namespace

bool omega_contained(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& halfwidths, double tol) {
  Eigen::VectorXd spread = Eigen::VectorXd::Zero(halfwidths.size());
  for (std::size_t k = 1; k < points.size(); ++k) spread += (points[k] - points[k - 1]).cwiseAbs();
  for (Eigen::Index c = 0; c < halfwidths.size(); ++c)
    if (spread(c) > halfwidths(c) + tol * std::max(1.0, halfwidths(c))) return false;
  return true;
}

bool omega_contained(const PolylineTrace& trace, const ConfigurationGeometry& geom, double tol) {
  return omega_contained(trace.points, geom.halfwidths, tol);
}

ReducibilityReport check_reducibility(const ConfigurationGeometry& geom, const PolylineTrace& trace,
                                  const CheckOptions& opts) {
  ReducibilityReport rep;
  const std::size_t links = trace.links();
  const Eigen::VectorXd& hw = geom.halfwidths;
  auto witness = [&](std::string cond, std::size_t k, Eigen::Index c, double margin, std::string detail) {
    rep.witnesses.push_back({std::move(cond), static_cast<int>(k), static_cast<int>(c), margin, std::move(detail)});
  };

  rep.nested_faces = true;
  for (std::size_t k = 1; k < links; ++k) {
    const ActiveSet& prev = trace.faces[k - 1];
    const ActiveSet& cur = trace.faces[k];
    if (cur != trace.tight[k]) {
      rep.nested_faces = false;
      witness("nested_faces", k, -1, 0.0,
              "constraints released at vertex: tight " + describe(trace.tight[k]) + ", face " + describe(cur));
    } else if (!(cur.size() > prev.size() && std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))) {
      rep.nested_faces = false;
      witness("nested_faces", k, -1, 0.0, "face " + describe(cur) + " does not strictly contain " + describe(prev));
    }
  }

  rep.unit_dim_drops = true;
  Eigen::Index prev_rank = 0;
  for (std::size_t k = 1; k < links; ++k) {
    const Eigen::Index rank = normal_rank(geom, trace.faces[k], opts.rank_tol);
    if (rank != prev_rank + 1) {
      rep.unit_dim_drops = false;
      witness("unit_dim_drops", k, -1, static_cast<double>(rank - prev_rank),
              "face dimension drops by " + std::to_string(rank - prev_rank) + " at vertex, hits " +
                  describe(trace.hits[k]));
    }
    prev_rank = rank;
  }

  rep.interior_vertices = true;
  for (std::size_t k = 1; k < links; ++k) {
    for (Eigen::Index c = 0; c < geom.m(); ++c) {
      if (contains_index(trace.faces[k], c)) continue;
      const double margin = hw(c) * (1.0 - opts.tol) - std::abs(trace.points[k](c));
      if (margin <= 0.0) {
        rep.interior_vertices = false;
        witness("interior_vertices", k, c, margin, "vertex touches the bound of a constraint outside its face");
      }
    }
  }

  rep.omega_contained = true;
  {
    Eigen::VectorXd spread = Eigen::VectorXd::Zero(geom.m());
    for (std::size_t k = 1; k < trace.points.size(); ++k)
      spread += (trace.points[k] - trace.points[k - 1]).cwiseAbs();
    for (Eigen::Index c = 0; c < geom.m(); ++c) {
      const double margin = hw(c) + opts.tol * std::max(1.0, hw(c)) - spread(c);
      if (margin < 0.0) {
        rep.omega_contained = false;
        witness("omega_contained", static_cast<std::size_t>(-1), c, margin,
                "sum of link increments exceeds the bound");
      }
    }
  }

  rep.invertible = trace.saturated;
  if (!trace.saturated) witness("invertible", links, -1, 0.0, "trace did not saturate");
  for (std::size_t k = 1; k < trace.points.size(); ++k) {
    const double len = (trace.points[k] - trace.points[k - 1]).norm();
    if (!(trace.distances[k] > trace.distances[k - 1]) || !(len > 0.0)) {
      rep.invertible = false;
      witness("invertible", k, -1, len, "degenerate link");
    }
  }

  rep.overall = rep.nested_faces && rep.unit_dim_drops && rep.interior_vertices && rep.omega_contained &&
                rep.invertible;
  return rep;
}

EffectiveCurves effective_pi_curves(const ConfigurationGeometry& geom, const PolylineTrace& trace,
                                    const CheckOptions& opts) {
  std::vector<std::size_t> keep{0};
  for (std::size_t k = 1; k < trace.points.size(); ++k)
    if (trace.distances[k] > trace.distances[keep.back()]) keep.push_back(k);

  EffectiveCurves out;
  const Eigen::Index m = geom.m();
  std::vector<CurvePoint> reaction(keep.size(), CurvePoint{0.0, 0.0});
  for (std::size_t j = 0; j < keep.size(); ++j) reaction[j].tau = trace.distances[keep[j]];
  for (Eigen::Index c = 0; c < m; ++c) {
    std::vector<CurvePoint> pts;
    pts.reserve(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
      const double v = j == 0 ? 0.0 : geom.sqrt_a(c) * trace.points[keep[j]](c);
      pts.push_back({trace.distances[keep[j]], v});
      if (geom.springs[static_cast<std::size_t>(c)].i == 1) reaction[j].value += v;
    }
    out.springs.emplace_back(std::move(pts));
  }
  out.reaction = LoadingCurve(std::move(reaction));
  out.equivalent = check_reducibility(geom, trace, opts).overall;
  return out;
}

void LinearConnectionSpec::validate() const {
  if (indices.size() < 2) throw InvalidArgument("linear connection needs at least one branch");
  if (indices.front() != 1) throw InvalidArgument("linear connection indices must start at 1");
  for (std::size_t n = 1; n < indices.size(); ++n)
    if (indices[n] <= indices[n - 1]) throw InvalidArgument("linear connection indices must increase");
  if (branches.size() != indices.size() - 1)
    throw InvalidArgument("linear connection needs one edge list per branch");
  for (std::size_t n = 0; n < branches.size(); ++n) {
    const auto want = static_cast<std::size_t>(indices[n + 1] - indices[n] + 1);
    if (branches[n].size() != want)
      throw InvalidArgument("branch " + std::to_string(n) + " needs " + std::to_string(want) + " edges");
  }
}

SpringNetwork LinearConnectionSpec::to_network() const {
  validate();
  const int n_nodes = node_count();
  std::vector<Spring> springs;
  for (std::size_t n = 0; n < branches.size(); ++n) {
    std::vector<int> path{1};
    for (int v = indices[n] + 1; v <= indices[n + 1]; ++v) path.push_back(v);
    path.push_back(n_nodes);
    for (std::size_t e = 0; e + 1 < path.size(); ++e)
      springs.push_back({path[e], path[e + 1], branches[n][e].a, branches[n][e].r});
  }
  return SpringNetwork(n_nodes, std::move(springs));
}

EffectiveStop series_effective(std::span<const EdgeParams> edges) {
  if (edges.empty()) throw InvalidArgument("series connection needs at least one edge");
  double compliance = 0.0;
  double r = edges.front().r;
  for (const auto& e : edges) {
    compliance += 1.0 / e.a;
    r = std::min(r, e.r);
  }
  const double a = 1.0 / compliance;
  return {a, r, r / a};
}

LinearEffectiveParams linear_effective_params(const LinearConnectionSpec& spec, double rel_tol) {
  spec.validate();
  LinearEffectiveParams out;
  for (std::size_t n = 0; n < spec.branches.size(); ++n) {
    const auto& br = spec.branches[n];
    out.stops.push_back(series_effective(br));
    for (std::size_t i = 0; i < br.size(); ++i)
      for (std::size_t j = i + 1; j < br.size(); ++j)
        if (nearly_equal(br[i].r, br[j].r, rel_tol)) {
          out.distinct_thresholds = false;
          out.ties.push_back("branch " + std::to_string(n) + ": edges " + std::to_string(i) + " and " +
                             std::to_string(j) + " share r");
        }
  }
  for (std::size_t p = 0; p < out.stops.size(); ++p)
    for (std::size_t q = p + 1; q < out.stops.size(); ++q)
      if (nearly_equal(out.stops[p].rho, out.stops[q].rho, rel_tol)) {
        out.distinct_ratios = false;
        out.ties.push_back("branches " + std::to_string(p) + " and " + std::to_string(q) + " share r/a");
      }
  out.generic = out.distinct_thresholds && out.distinct_ratios;
  return out;
}

std::optional<LoadingCurve> reduce_graph(const SpringNetwork& net) {
  struct Edge {
    int u;
    int v;
    LoadingCurve curve;
    bool alive;
  };
  const int n_nodes = net.node_count();
  std::vector<Edge> edges;
  for (const auto& s : net.springs()) edges.push_back({s.i, s.j, single_stop_curve(s.a, s.r), true});
  auto same_pair = [](const Edge& x, const Edge& y) {
    return std::minmax(x.u, x.v) == std::minmax(y.u, y.v);
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < edges.size() && !changed; ++p) {
      if (!edges[p].alive) continue;
      for (std::size_t q = p + 1; q < edges.size(); ++q) {
        if (edges[q].alive && same_pair(edges[p], edges[q])) {
          edges[p].curve = curve_sum(edges[p].curve, edges[q].curve);
          edges[q].alive = false;
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    for (int v = 2; v < n_nodes && !changed; ++v) {
      std::vector<std::size_t> inc;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].alive && (edges[e].u == v || edges[e].v == v)) inc.push_back(e);
      if (inc.size() == 1) {
        edges[inc[0]].alive = false;
        changed = true;
      } else if (inc.size() == 2) {
        Edge& e1 = edges[inc[0]];
        Edge& e2 = edges[inc[1]];
        const int x = e1.u == v ? e1.v : e1.u;
        const int y = e2.u == v ? e2.v : e2.u;
        e1 = Edge{std::min(x, y), std::max(x, y), curve_series(e1.curve, e2.curve), true};
        e2.alive = false;
        changed = true;
      }
    }
  }

  const Edge* last = nullptr;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    if (last != nullptr) return std::nullopt;
    last = &e;
  }
  if (last == nullptr || last->u != 1 || last->v != n_nodes) return std::nullopt;
  return last->curve;
}

LinearConnectionSpec random_linear_connection(std::mt19937_64& rng, const LinearConnectionRanges& ranges) {
  std::uniform_int_distribution<int> branches(ranges.branches_min, ranges.branches_max);
  std::uniform_int_distribution<int> interior(1, 1 + ranges.interior_max);
  std::uniform_real_distribution<double> a(ranges.a_min, ranges.a_max);
  std::uniform_real_distribution<double> r(ranges.r_min, ranges.r_max);
  for (;;) {
    LinearConnectionSpec spec;
    spec.indices = {1};
    const int s = branches(rng);
    for (int n = 0; n < s; ++n) {
      const int inner = interior(rng);
      spec.indices.push_back(spec.indices.back() + inner);
      std::vector<EdgeParams> br;
      for (int e = 0; e <= inner; ++e) br.push_back({a(rng), r(rng)});
      spec.branches.push_back(std::move(br));
    }
    // Generous margin so the effective thresholds are well separated.
    if (linear_effective_params(spec, 1e-3).generic) return spec;
  }
}

SpringNetwork add_weak_springs(const SpringNetwork& base, int count, double a_extra, double r_th,
                               std::mt19937_64& rng) {
  const int n = base.node_count();
  std::vector<Spring> springs(base.springs().begin(), base.springs().end());
  std::uniform_int_distribution<int> node(1, n);
  std::uniform_real_distribution<double> a(a_extra / 2.0, a_extra);
  std::uniform_real_distribution<double> r(r_th, 2.0 * r_th);
  for (int added = 0; added < count;) {
    const int i = node(rng);
    const int j = node(rng);
    if (i == j || (std::min(i, j) == 1 && std::max(i, j) == n)) continue;
    springs.push_back({i, j, a(rng), r(rng)});
    ++added;
  }
  return SpringNetwork(n, std::move(springs));
}

}  // namespace hysnet
