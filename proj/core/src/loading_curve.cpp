#include "hysnet/loading_curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hysnet/error.hpp"

namespace hysnet {

namespace {

std::vector<double> merged_knots(std::span<const CurvePoint> a, std::span<const CurvePoint> b) {
  std::vector<double> t;
  t.reserve(a.size() + b.size());
  for (const auto& p : a) t.push_back(p.tau);
  for (const auto& p : b) t.push_back(p.tau);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

// Removes knots closer than a relative 1e-14 to their predecessor; those
// arise from rounding when crossing points coincide with existing knots.
void dedupe_knots(std::vector<double>& t) {
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  out.reserve(t.size());
  for (double x : t) {
    if (!out.empty() && x - out.back() <= 1e-14 * std::max(1.0, std::abs(x))) continue;
    out.push_back(x);
  }
  t = std::move(out);
}

}  // namespace

LoadingCurve::LoadingCurve() : points_{{0.0, 0.0}} {}

LoadingCurve::LoadingCurve(std::vector<CurvePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("loading curve needs at least one breakpoint");
  if (points_.front().tau != 0.0 || points_.front().value != 0.0)
    throw InvalidArgument("loading curve must start at (0, 0)");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].tau) || !std::isfinite(points_[k].value))
      throw InvalidArgument("loading curve breakpoint " + std::to_string(k) + " is not finite");
    if (k > 0 && !(points_[k].tau > points_[k - 1].tau))
      throw InvalidArgument("loading curve abscissae must be strictly increasing");
  }
}

LoadingCurve LoadingCurve::identity(double end) {
  if (!(end > 0.0)) throw InvalidArgument("identity curve needs a positive domain");
  return LoadingCurve({{0.0, 0.0}, {end, end}});
}

double LoadingCurve::operator()(double tau, Horizon mode) const {
  if (tau < 0.0) return -(*this)(-tau, mode);
  const double end = domain_end();
  if (tau >= end) {
    if (tau > end && mode == Horizon::Strict)
      throw HorizonError("loading curve evaluated beyond its domain", tau, end);
    return end_value();
  }
  auto it = std::upper_bound(points_.begin(), points_.end(), tau,
                             [](double x, const CurvePoint& p) { return x < p.tau; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (tau - lo.tau) / (hi.tau - lo.tau);
  return lo.value + w * (hi.value - lo.value);
}

double LoadingCurve::slope(std::size_t k) const {
  if (k + 1 >= points_.size()) return 0.0;
  return (points_[k + 1].value - points_[k].value) / (points_[k + 1].tau - points_[k].tau);
}

bool LoadingCurve::is_strictly_increasing() const noexcept {
  if (points_.size() < 2) return false;
  for (std::size_t k = 1; k < points_.size(); ++k)
    if (!(points_[k].value > points_[k - 1].value)) return false;
  return true;
}

bool LoadingCurve::is_concave_nondecreasing(double rel_tol) const noexcept {
  double smax = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) smax = std::max(smax, std::abs(slope(k)));
  const double tol = rel_tol * smax;
  double prev = slope(0);
  if (prev < -tol) return false;
  for (std::size_t k = 1; k + 1 < points_.size(); ++k) {
    const double s = slope(k);
    if (s < -tol || s > prev + tol) return false;
    prev = s;
  }
  return true;
}

LoadingCurve LoadingCurve::scaled(double factor) const {
  std::vector<CurvePoint> pts = points_;
  for (auto& p : pts) p.value *= factor;
  return LoadingCurve(std::move(pts));
}

LoadingCurve LoadingCurve::simplified(double rel_tol) const {
  if (points_.size() <= 2) return *this;
  double smax = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) smax = std::max(smax, std::abs(slope(k)));
  const double tol = rel_tol * smax;
  std::vector<CurvePoint> out{points_.front()};
  for (std::size_t k = 1; k + 1 < points_.size(); ++k) {
    const auto& a = out.back();
    const auto& b = points_[k];
    const auto& c = points_[k + 1];
    const double s1 = (b.value - a.value) / (b.tau - a.tau);
    const double s2 = (c.value - b.value) / (c.tau - b.tau);
    if (std::abs(s2 - s1) > tol) out.push_back(b);
  }
  out.push_back(points_.back());
  return LoadingCurve(std::move(out));
}

double LoadingCurve::max_abs_difference(const LoadingCurve& other) const {
  std::vector<double> t = merged_knots(points_, other.points_);
  t.push_back(1.5 * t.back() + 1.0);
  double d = 0.0;
  for (double x : t) d = std::max(d, std::abs((*this)(x) - other(x)));
  return d;
}

// ---------------------------------------------------------------------------

LoadingCurve pi_loading_curve(const PiOperator& pi) {
  std::vector<CurvePoint> pts{{0.0, 0.0}};
  double slope = 0.0;
  for (const auto& s : pi.stops()) slope += s.weight;
  double tau = 0.0;
  double value = 0.0;
  for (const auto& s : pi.stops()) {
    value += slope * (s.threshold - tau);
    tau = s.threshold;
    pts.push_back({tau, value});
    slope -= s.weight;
  }
  return LoadingCurve(std::move(pts));
}

PiOperator pi_from_curve(const LoadingCurve& curve, double rel_tol) {
  if (!curve.is_concave_nondecreasing(rel_tol))
    throw InvalidArgument("pi_from_curve: curve is not concave and nondecreasing");
  const auto pts = curve.points();
  const std::size_t n = pts.size();
  double smax = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) smax = std::max(smax, curve.slope(k));
  std::vector<WeightedStop> stops;
  for (std::size_t k = 1; k < n; ++k) {
    const double before = curve.slope(k - 1);
    const double after = (k + 1 < n) ? curve.slope(k) : 0.0;
    const double w = before - after;
    if (w > rel_tol * smax) stops.push_back({w, pts[k].tau});
  }
  return PiOperator(std::move(stops));
}

double memory_evaluate(const LoadingCurve& curve, const MainExtremaMemory& mem, Horizon mode) {
  const auto g = mem.extrema();
  double r = curve(g[0], mode);
  for (std::size_t k = 1; k < g.size(); ++k) r += 2.0 * curve(0.5 * (g[k] - g[k - 1]), mode);
  return r;
}

LoadingCurve curve_sum(const LoadingCurve& a, const LoadingCurve& b) {
  std::vector<CurvePoint> pts;
  for (double t : merged_knots(a.points(), b.points())) pts.push_back({t, a(t) + b(t)});
  pts.front() = {0.0, 0.0};
  return LoadingCurve(std::move(pts));
}

LoadingCurve curve_compose(const LoadingCurve& a, const LoadingCurve& b) {
  // Kinks of a o b: kinks of b and preimages under b of the kinks of a
  // (including the odd reflections and the saturation point of a).
  std::vector<double> crit;
  for (const auto& p : a.points()) {
    if (p.tau == 0.0) continue;
    crit.push_back(p.tau);
    crit.push_back(-p.tau);
  }
  std::vector<double> knots;
  const auto bp = b.points();
  for (std::size_t k = 0; k < bp.size(); ++k) {
    knots.push_back(bp[k].tau);
    if (k + 1 == bp.size()) break;
    const double y0 = bp[k].value;
    const double y1 = bp[k + 1].value;
    for (double c : crit) {
      if ((y0 - c) * (y1 - c) < 0.0) {
        const double w = (c - y0) / (y1 - y0);
        knots.push_back(bp[k].tau + w * (bp[k + 1].tau - bp[k].tau));
      }
    }
  }
  dedupe_knots(knots);
  std::vector<CurvePoint> pts;
  pts.reserve(knots.size());
  for (double t : knots) pts.push_back({t, a(b(t))});
  pts.front() = {0.0, 0.0};
  return LoadingCurve(std::move(pts));
}

LoadingCurve curve_inverse(const LoadingCurve& a) {
  if (!a.is_strictly_increasing())
    throw NotInvertible("curve is not strictly increasing on its domain");
  std::vector<CurvePoint> pts;
  pts.reserve(a.size());
  for (const auto& p : a.points()) pts.push_back({p.value, p.tau});
  return LoadingCurve(std::move(pts));
}

LoadingCurve curve_series(const LoadingCurve& a, const LoadingCurve& b) {
  const LoadingCurve ia = curve_inverse(a);
  const LoadingCurve ib = curve_inverse(b);
  const double end = std::min(ia.domain_end(), ib.domain_end());
  std::vector<double> knots;
  for (const auto& p : ia.points())
    if (p.tau < end) knots.push_back(p.tau);
  for (const auto& p : ib.points())
    if (p.tau < end) knots.push_back(p.tau);
  knots.push_back(end);
  dedupe_knots(knots);
  std::vector<CurvePoint> pts;
  pts.reserve(knots.size());
  // Deformations of the two elements add at equal force.
  for (double f : knots) pts.push_back({ia(f) + ib(f), f});
  pts.front() = {0.0, 0.0};
  return LoadingCurve(std::move(pts));
}

LoadingCurve curve_algebra(CurveOp op, const LoadingCurve& a, const LoadingCurve* b) {
  if (op != CurveOp::Invert && b == nullptr)
    throw InvalidArgument("curve_algebra: binary operation needs a second curve");
  switch (op) {
    case CurveOp::Sum: return curve_sum(a, *b);
    case CurveOp::Compose: return curve_compose(a, *b);
    case CurveOp::Invert: return curve_inverse(a);
    case CurveOp::Series: return curve_series(a, *b);
  }
  throw InvalidArgument("curve_algebra: unknown operation");
}

}  // namespace hysnet
