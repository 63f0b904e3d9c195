#include "hysnet/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hysnet/error.hpp"

namespace hysnet {

double clamp_to_limit(double x, double rho) noexcept {
  if (x > rho) return rho;
  if (x < -rho) return -rho;
  return x;
}

StopState stop_step(StopState state, double delta_eps) noexcept {
  state.e = clamp_to_limit(state.e + delta_eps, state.rho);
  return state;
}

// ---------------------------------------------------------------------------
// Signal

Signal::Signal(std::vector<SignalPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("signal needs at least one breakpoint");
  if (points_.front().t < 0.0) throw InvalidArgument("signal must start at a nonnegative time");
  if (points_.front().g != 0.0) throw InvalidArgument("signal must start at g = 0");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].g))
      throw InvalidArgument("signal breakpoint " + std::to_string(i) + " is not finite");
    if (i > 0 && !(points_[i].t > points_[i - 1].t))
      throw InvalidArgument("signal times must be strictly increasing (breakpoint " +
                            std::to_string(i) + ")");
  }
}

double Signal::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& p : points_) m = std::max(m, std::abs(p.g));
  return m;
}

Signal Signal::negated() const {
  std::vector<SignalPoint> pts = points_;
  for (auto& p : pts) p.g = -p.g;
  return Signal(std::move(pts));
}

Signal Signal::retimed(std::span<const double> times) const {
  if (times.size() != points_.size())
    throw InvalidArgument("retimed: time list length differs from breakpoint count");
  std::vector<SignalPoint> pts = points_;
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].t = times[i];
  return Signal(std::move(pts));
}

// ---------------------------------------------------------------------------
// PiOperator

PiOperator::PiOperator(std::vector<WeightedStop> stops) : stops_(std::move(stops)) {
  double prev = 0.0;
  for (std::size_t n = 0; n < stops_.size(); ++n) {
    const auto& s = stops_[n];
    if (!(s.weight > 0.0) || !std::isfinite(s.weight))
      throw InvalidArgument("stop " + std::to_string(n) + ": weight must be positive");
    if (!(s.threshold > prev) || !std::isfinite(s.threshold))
      throw InvalidArgument("stop " + std::to_string(n) +
                            ": thresholds must be positive and strictly increasing");
    prev = s.threshold;
  }
  states_.assign(stops_.size(), 0.0);
}

void PiOperator::advance(double delta_g) noexcept {
  for (std::size_t n = 0; n < stops_.size(); ++n)
    states_[n] = clamp_to_limit(states_[n] + delta_g, stops_[n].threshold);
}

void PiOperator::reset() noexcept { std::fill(states_.begin(), states_.end(), 0.0); }

double PiOperator::output() const noexcept {
  double r = 0.0;
  for (std::size_t n = 0; n < stops_.size(); ++n) r += stops_[n].weight * states_[n];
  return r;
}

std::vector<double> pi_apply_direct(const PiOperator& pi, const Signal& signal) {
  PiOperator op = pi;
  op.reset();
  std::vector<double> out;
  out.reserve(signal.size());
  out.push_back(op.output());
  for (std::size_t k = 1; k < signal.size(); ++k) {
    op.advance(signal[k].g - signal[k - 1].g);
    out.push_back(op.output());
  }
  return out;
}

// ---------------------------------------------------------------------------
// MainExtremaMemory

MainExtremaMemory::MainExtremaMemory(double horizon) : extrema_{0.0}, horizon_(horizon) {
  if (!(horizon > 0.0)) throw InvalidArgument("memory horizon must be positive");
}

MainExtremaMemory MainExtremaMemory::from_extrema(std::vector<double> extrema, double horizon) {
  MainExtremaMemory mem(horizon);
  if (extrema.empty()) return mem;
  if (!is_extrema_chain(extrema))
    throw InvalidArgument("extrema list violates the alternating dominance chain");
  for (double g : extrema)
    if (std::abs(g) > horizon) throw HorizonError("extremum beyond horizon", g, horizon);
  mem.extrema_ = std::move(extrema);
  return mem;
}

void MainExtremaMemory::update(double g_new) {
  if (!std::isfinite(g_new)) throw InvalidArgument("memory update with non-finite input");
  if (std::abs(g_new) > horizon_)
    throw HorizonError("input exceeds memory horizon", g_new, horizon_);
  auto& ext = extrema_;
  const double cur = ext.back();
  if (g_new == cur) return;

  // A new global maximum of |g| wipes out the whole history.
  if (std::abs(g_new) >= std::abs(ext.front())) {
    ext.assign(1, g_new);
    return;
  }

  const bool rising = g_new > cur;
  // Continuing in the same direction: the current value was not a turning
  // point.
  if (ext.size() >= 2) {
    const bool last_rising = ext.back() > ext[ext.size() - 2];
    if (last_rising == rising) ext.pop_back();
  }
  // Close every loop whose far end is passed by the new value. G1 is never
  // removed here; that case is handled by the wipe-out above.
  while (ext.size() >= 3) {
    const double prev_same = ext[ext.size() - 2];
    const bool passed = rising ? g_new >= prev_same : g_new <= prev_same;
    if (!passed) break;
    ext.pop_back();
    ext.pop_back();
  }
  ext.push_back(g_new);
}

bool MainExtremaMemory::satisfies_chain() const noexcept { return is_extrema_chain(extrema_); }

MainExtremaMemory memory_update(MainExtremaMemory mem, double g_new) {
  mem.update(g_new);
  return mem;
}

bool is_extrema_chain(std::span<const double> ext) noexcept {
  if (ext.empty()) return false;
  double bound = 2.0 * std::abs(ext[0]);
  double prev_sign = ext[0] > 0.0 ? 1.0 : (ext[0] < 0.0 ? -1.0 : 0.0);
  for (std::size_t k = 1; k < ext.size(); ++k) {
    const double diff = ext[k] - ext[k - 1];
    if (diff == 0.0) return false;
    const double sign = diff > 0.0 ? 1.0 : -1.0;
    if (prev_sign != 0.0 && sign == prev_sign) return false;
    if (std::abs(diff) > bound) return false;
    bound = std::abs(diff);
    prev_sign = sign;
  }
  return true;
}

}  // namespace hysnet
