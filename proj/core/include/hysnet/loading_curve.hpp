#pragma once

// Piecewise-linear loading curves and their algebra. A loading curve is the
// response of a hysteresis operator to the input g(t) = t from the relaxed
// state; it determines the operator completely through the main extrema
// memory of the input.

#include <optional>
#include <span>
#include <vector>

#include "hysnet/hysteresis.hpp"

namespace hysnet {

struct CurvePoint {
  double tau;
  double value;
};

/// phi on [0, domain_end()], linear between breakpoints, phi(0) = 0.
/// Negative arguments use the odd extension phi(-x) = -phi(x); arguments
/// beyond the domain either throw (Horizon::Strict) or continue with the end
/// value (Horizon::Extend).
class LoadingCurve {
 public:
  /// The zero curve on [0, 0].
  LoadingCurve();
  explicit LoadingCurve(std::vector<CurvePoint> points);

  /// phi(x) = x on [0, end].
  static LoadingCurve identity(double end);

  double operator()(double tau, Horizon mode = Horizon::Extend) const;

  std::span<const CurvePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double domain_end() const noexcept { return points_.back().tau; }
  double end_value() const noexcept { return points_.back().value; }

  /// Slope of piece k, i.e. on [tau_k, tau_{k+1}].
  double slope(std::size_t k) const;

  bool is_strictly_increasing() const noexcept;
  /// Nonincreasing nonnegative slopes, within `rel_tol` of the largest slope.
  bool is_concave_nondecreasing(double rel_tol = 1e-9) const noexcept;

  LoadingCurve scaled(double factor) const;

  /// Drop interior breakpoints where the slope changes by less than
  /// rel_tol times the largest slope.
  LoadingCurve simplified(double rel_tol = 1e-12) const;

  /// Sup of |phi - other| over the union of both breakpoint sets and a
  /// margin past the longer domain (both extended).
  double max_abs_difference(const LoadingCurve& other) const;

 private:
  std::vector<CurvePoint> points_;
};

/// Loading curve of a relaxed PI operator: slope a_k + ... + a_K on
/// [rho_{k-1}, rho_k), flat from rho_K on.
LoadingCurve pi_loading_curve(const PiOperator& pi);

/// Inverse of pi_loading_curve. Requires a concave nondecreasing curve;
/// throws InvalidArgument otherwise.
PiOperator pi_from_curve(const LoadingCurve& curve, double rel_tol = 1e-9);

/// phi(G1) + 2 * sum_{k>=2} phi((G_k - G_{k-1}) / 2).
double memory_evaluate(const LoadingCurve& curve, const MainExtremaMemory& mem,
                       Horizon mode = Horizon::Extend);

/// Pointwise sum on the merged breakpoints.
LoadingCurve curve_sum(const LoadingCurve& a, const LoadingCurve& b);
/// a o b. Both curves are evaluated with odd extension and end saturation.
LoadingCurve curve_compose(const LoadingCurve& a, const LoadingCurve& b);
/// Inverse function on [0, a.end_value()]. Throws NotInvertible unless a is
/// strictly increasing on its domain.
LoadingCurve curve_inverse(const LoadingCurve& a);
/// Series connection: (a^-1 + b^-1)^-1, restricted to the common force range.
LoadingCurve curve_series(const LoadingCurve& a, const LoadingCurve& b);

enum class CurveOp { Sum, Compose, Invert, Series };

/// Dispatch on `op`; `b` is required for every operation except Invert.
LoadingCurve curve_algebra(CurveOp op, const LoadingCurve& a,
                           const LoadingCurve* b = nullptr);

}  // namespace hysnet
