#include "dgd/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dgd {

namespace {

// Rounding allowance, in units of the largest magnitude seen during a run.
constexpr double kRoundingUlps = 1024.0;

void require_dimension(const GradientOracle& oracle, std::size_t d) {
  if (oracle.dimension() != d) {
    throw std::invalid_argument("dimension mismatch: oracle has " +
                                std::to_string(oracle.dimension()) + ", point has " +
                                std::to_string(d));
  }
}

}  // namespace

DelayedRunState::DelayedRunState(const GradientOracle& oracle, Vector x0, double eta,
                                 std::size_t tau)
    : eta_(eta), tau_(tau), x0_(std::move(x0)), shadow_(x0_), history_(tau + 1) {
  require_dimension(oracle, static_cast<std::size_t>(x0_.size()));
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("DelayedRunState: eta must be positive and finite");
  }
  Vector g = oracle.gradient(x0_);
  history_.push(HistoryEntry{x0_, std::move(g)});
}

Vector dgd_step(const DelayedRunState& state) {
  if (state.t() < state.tau()) return state.initial();
  return state.iterate() - state.eta() * state.delayed().gradient;
}

Vector shadow_step(const DelayedRunState& state) {
  return state.shadow() - state.eta() * state.gradient();
}

void advance(DelayedRunState& state, const GradientOracle& oracle) {
  require_dimension(oracle, state.dimension());
  Vector next = dgd_step(state);
  state.shadow_ = shadow_step(state);
  Vector g = oracle.gradient(next);
  state.history_.push(HistoryEntry{std::move(next), std::move(g)});
  ++state.t_;
}

RunTrace run(const GradientOracle& oracle, const Vector& x0, double eta, std::size_t tau,
             std::size_t max_iters, const Vector& x_star, double f_star,
             const StepObserver& observer) {
  if (!(eta > 0.0)) throw std::invalid_argument("run: eta must be positive");
  if (max_iters < tau) throw std::invalid_argument("run: max_iters must be at least tau");
  require_dimension(oracle, static_cast<std::size_t>(x_star.size()));

  DelayedRunState state(oracle, x0, eta, tau);
  RunTrace trace;
  trace.meta.eta = eta;
  trace.meta.tau = tau;
  trace.rows.reserve(max_iters + 1);

  double max_norm = x_star.norm();
  double max_value = std::abs(f_star);
  for (std::size_t t = 0;; ++t) {
    if (observer) observer(state);
    const Vector& x = state.iterate();
    const double fx = oracle.value(x);
    TraceRow row;
    row.t = t;
    row.dist = (x - x_star).norm();
    row.cost_gap = fx - f_star;
    row.grad_sq = state.gradient().squaredNorm();
    row.dev_sq = (x - state.shadow()).squaredNorm();
    row.shadow_sq = (state.shadow() - x_star).squaredNorm();
    trace.rows.push_back(row);

    max_norm = std::max({max_norm, x.norm(), state.shadow().norm()});
    max_value = std::max(max_value, std::abs(fx));

    if (t == max_iters) break;
    advance(state, oracle);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  trace.meta.distance_resolution = kRoundingUlps * eps * (1.0 + max_norm);
  trace.meta.value_resolution = kRoundingUlps * eps * (1.0 + max_value);
  return trace;
}

Vector finite_difference_grad(const GradientOracle& oracle, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_grad: h must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    const double forward = oracle.value(probe);
    probe[i] = xi - h;
    const double backward = oracle.value(probe);
    probe[i] = xi;
    g[i] = (forward - backward) / (2.0 * h);
  }
  return g;
}

}  // namespace dgd
