#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dgd/history_ring.hpp"

namespace dgd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Certified curvature constants of a cost function. zeta is the PL
/// constant; either mu or zeta may be zero when the property is absent.
struct CurvatureBounds {
  double L = 0.0;
  double mu = 0.0;
  double zeta = 0.0;
};

/// A differentiable cost. Implementations must be safe for concurrent
/// const use and gradient() must be the exact gradient of value().
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual CurvatureBounds curvature() const = 0;
};

/// A stored iterate together with its (single) gradient evaluation.
struct HistoryEntry {
  Vector point;
  Vector gradient;
};

/// State of x_{t+1} = x_t - eta grad f(x_{t-tau}) (x_{t+1} = x_0 while t < tau)
/// running in lockstep with the shadow sequence x~_{t+1} = x~_t - eta grad f(x_t).
///
/// The history keeps the min(t, tau) + 1 most recent iterates, oldest
/// x_{max(0, t - tau)}. tau = 0 gives plain gradient descent.
class DelayedRunState {
 public:
  DelayedRunState(const GradientOracle& oracle, Vector x0, double eta, std::size_t tau);

  std::size_t t() const { return t_; }
  double eta() const { return eta_; }
  std::size_t tau() const { return tau_; }
  std::size_t dimension() const { return static_cast<std::size_t>(x0_.size()); }

  const Vector& initial() const { return x0_; }
  const Vector& iterate() const { return history_.newest().point; }
  /// grad f(x_t), evaluated once when x_t was produced.
  const Vector& gradient() const { return history_.newest().gradient; }
  const Vector& shadow() const { return shadow_; }
  const HistoryRing<HistoryEntry>& history() const { return history_; }

  /// The entry for x_{t - tau}. Only meaningful once t >= tau.
  const HistoryEntry& delayed() const { return history_.oldest(); }

 private:
  friend void advance(DelayedRunState& state, const GradientOracle& oracle);

  std::size_t t_ = 0;
  double eta_;
  std::size_t tau_;
  Vector x0_;
  Vector shadow_;
  HistoryRing<HistoryEntry> history_;
};

/// x_{t+1} for the given state: x_0 while t < tau, else x_t - eta grad f(x_{t-tau}).
Vector dgd_step(const DelayedRunState& state);

/// x~_{t+1} = x~_t - eta grad f(x_t), reusing the cached gradient at x_t.
Vector shadow_step(const DelayedRunState& state);

/// Commits both updates, evaluates grad f(x_{t+1}) once and increments t.
/// Throws std::invalid_argument if the oracle dimension does not match.
void advance(DelayedRunState& state, const GradientOracle& oracle);

/// One row per iteration, recorded at x_t before stepping.
struct TraceRow {
  std::size_t t = 0;
  double dist = 0.0;       // ||x_t - x_*||
  double cost_gap = 0.0;   // f(x_t) - f_*
  double grad_sq = 0.0;    // ||grad f(x_t)||^2
  double dev_sq = 0.0;     // ||x_t - x~_t||^2
  double shadow_sq = 0.0;  // ||x~_t - x_*||^2

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct TraceMeta {
  std::string problem;
  double eta = 0.0;
  std::size_t tau = 0;
  std::uint64_t seed = 0;
  // Certified uncertainty of the reference point and value, and rounding
  // allowances for distances and cost values. The bound checkers widen
  // every comparison by these amounts; all zero means exact data.
  double x_star_radius = 0.0;
  double f_star_radius = 0.0;
  double distance_resolution = 0.0;
  double value_resolution = 0.0;
  std::map<std::string, std::string> extras;

  friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

struct RunTrace {
  TraceMeta meta;
  std::vector<TraceRow> rows;

  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

using StepObserver = std::function<void(const DelayedRunState&)>;

/// Runs max_iters delayed steps from x0 and records rows t = 0..max_iters.
/// The observer, if set, sees the state at every recorded t.
RunTrace run(const GradientOracle& oracle, const Vector& x0, double eta, std::size_t tau,
             std::size_t max_iters, const Vector& x_star, double f_star,
             const StepObserver& observer = {});

/// Central differences (f(x + h e_i) - f(x - h e_i)) / (2h).
Vector finite_difference_grad(const GradientOracle& oracle, const Vector& x, double h);

}  // namespace dgd
