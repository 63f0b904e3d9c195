#pragma once

// Scalar rate-independent hysteresis: the stop operator, weighted sums of
// stops (Prandtl-Ishlinskii operators), piecewise-linear input signals and
// the running main extrema memory that encodes the state of any such
// operator started from the relaxed state.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace hysnet {

/// How arguments outside the horizon [-L, L] are treated.
enum class Horizon {
  Strict,  ///< throw HorizonError
  Extend,  ///< continue with the end value (saturated)
};

/// One stop: elastic limit rho and current elastic deformation e, |e| <= rho.
struct StopState {
  double rho = 1.0;
  double e = 0.0;
};

/// Clamp of x to [-rho, rho].
double clamp_to_limit(double x, double rho) noexcept;

/// Advance a stop by one monotone input increment: e' = clamp(e + delta).
StopState stop_step(StopState state, double delta_eps) noexcept;

/// A single weighted stop of a Prandtl-Ishlinskii operator.
struct WeightedStop {
  double weight;     // stiffness, force per length
  double threshold;  // elastic limit, length
};

struct SignalPoint {
  double t;
  double g;
};

/// Piecewise-linear input g(t) with g(t0) = 0 and strictly increasing times.
class Signal {
 public:
  explicit Signal(std::vector<SignalPoint> points);

  std::span<const SignalPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const SignalPoint& operator[](std::size_t i) const { return points_[i]; }

  /// max |g| over all breakpoints (equal to the sup over the whole path).
  double max_abs() const noexcept;

  Signal negated() const;

  /// Same input path, new time stamps. `times` must be strictly increasing
  /// and of the same length.
  Signal retimed(std::span<const double> times) const;

 private:
  std::vector<SignalPoint> points_;
};

/// Weighted sum of stops with strictly increasing thresholds and positive
/// weights. Holds the per-stop elastic deformations; a new operator starts
/// relaxed.
class PiOperator {
 public:
  PiOperator() = default;
  explicit PiOperator(std::vector<WeightedStop> stops);

  std::span<const WeightedStop> stops() const noexcept { return stops_; }
  std::size_t size() const noexcept { return stops_.size(); }
  bool empty() const noexcept { return stops_.empty(); }

  /// Current elastic deformation of stop n.
  double state(std::size_t n) const { return states_.at(n); }
  std::span<const double> states() const noexcept { return states_; }

  /// Apply one monotone increment of the input to every stop.
  void advance(double delta_g) noexcept;
  void reset() noexcept;

  /// Sum of weight * elastic deformation.
  double output() const noexcept;

 private:
  std::vector<WeightedStop> stops_;
  std::vector<double> states_;
};

/// Output of the relaxed operator sampled at every breakpoint of `signal`,
/// computed stop by stop.
std::vector<double> pi_apply_direct(const PiOperator& pi, const Signal& signal);

/// Running main extremum values G_1, ..., G_q of a scalar input observed at
/// the ends of its monotone pieces. The last entry is always the current
/// input value; an input starting at 0 has memory (0).
class MainExtremaMemory {
 public:
  explicit MainExtremaMemory(double horizon = std::numeric_limits<double>::infinity());

  /// Build from an explicit list. Throws InvalidArgument if the list does not
  /// satisfy the alternating dominance chain.
  static MainExtremaMemory from_extrema(std::vector<double> extrema,
                                        double horizon = std::numeric_limits<double>::infinity());

  /// Move the input monotonically from current() to g_new.
  /// Throws HorizonError if |g_new| > horizon().
  void update(double g_new);

  std::span<const double> extrema() const noexcept { return extrema_; }
  double current() const noexcept { return extrema_.back(); }
  double horizon() const noexcept { return horizon_; }

  /// 2|G1| >= |G2 - G1| >= |G3 - G2| >= ... with alternating signs of the
  /// differences.
  bool satisfies_chain() const noexcept;

 private:
  std::vector<double> extrema_;
  double horizon_;
};

/// Functional form of MainExtremaMemory::update.
MainExtremaMemory memory_update(MainExtremaMemory mem, double g_new);

/// Check the dominance chain on a raw list.
bool is_extrema_chain(std::span<const double> extrema) noexcept;

}  // namespace hysnet
