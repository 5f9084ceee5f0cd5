#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgd/constants.hpp"
#include "dgd/core.hpp"
#include "dgd/report.hpp"
#include "dgd/rng.hpp"

namespace dgd {

// Trace checkers. Every comparison is widened by the uncertainty recorded in
// the trace metadata: a measured distance d stands for the interval
// [d - r, d + r] with r = x_star_radius + distance_resolution, a cost gap for
// [g - u, g + u] with u = f_star_radius + value_resolution. A violation is
// reported only when even the most favourable end of the interval fails by
// more than the relative slack. With zero radii the checks are exact.

/// 1 / (1 - J_{tau/2} L tau eta), the prefactor of the last-iterate bound.
double thm15_coefficient(const StepSizePolicy& policy, double eta);

/// Per-step contraction of the distance: (1 - eta alpha / (1 + q))^{1/2}.
double thm15_rate(const StepSizePolicy& policy, double eta);

/// Delay-free-form rate (1 - eta alpha / 2)^{1/2}; equals thm15_rate at q = 1.
double thm11_rate(double mu, double L, double eta);

/// eta > 0 and eta <= max_step_strongly_convex(policy). False when mu = 0.
bool strongly_convex_admissible(const StepSizePolicy& policy, double eta);

/// Step limit of the PL envelope: max_step_pl for tau >= 1, 1/L for tau = 0.
double pl_step_limit(double L, double zeta, std::size_t tau);

/// R(t): 0 at t = 0, the sum of ||grad f(x_j)||^2 over
/// j = max(0, t - tau) .. t - 1 otherwise. Read from the grad_sq column.
std::vector<double> window_gradient_sums(const RunTrace& trace, std::size_t tau);

/// ||x_t - x_*|| <= coefficient * rate^t * ||x_0 - x_*|| at every row.
/// Not applicable when eta exceeds max_step_strongly_convex.
ViolationReport check_thm15(const RunTrace& trace, const StepSizePolicy& policy, double eta);

/// ||x~_t - x_*||^2 <= (1 - alpha eta / (1 + q))^t ||x_0 - x_*||^2 at every row.
/// Same admissibility gate as check_thm15.
ViolationReport check_thm21(const RunTrace& trace, const StepSizePolicy& policy, double eta);

/// The one-step shadow inequality
///   ||x~_{t+1} - x_*||^2 <= c ||x~_t - x_*||^2 - (eta/(2L) - eta^2) ||g_t||^2
///                          + eta^2 tau (alpha eta / q + 2 L eta) R(t),
/// c = 1 - alpha eta / (1 + q), at every consecutive pair of rows. It needs
/// no step-size condition, so it is checked for every eta.
ViolationReport monitor_prop21(const RunTrace& trace, const StepSizePolicy& policy, double eta);

/// ||x_t - x~_t||^2 <= eta^2 tau R(t) at every row (tau from the trace).
ViolationReport check_deviation(const RunTrace& trace, double eta);

/// f(x_t) - f_* <= (1 - eta zeta)^{t - tau} (f(x_tau) - f_*) for t >= tau.
/// Not applicable when eta > pl_step_limit(L, zeta, tau) or zeta = 0.
ViolationReport check_pl(const RunTrace& trace, double L, double zeta, double eta,
                         std::size_t tau);

/// Records every certified strict increase of the cost gap from row t to
/// t + 1, t >= first_t. Informational: it is a probe, not a theorem.
ViolationReport probe_gap_increases(const RunTrace& trace, std::size_t first_t,
                                    std::string id = "gap_monotone");

/// The right-hand side of check_thm15 per row; NaN when eta is inadmissible.
std::vector<double> thm15_bound_column(const RunTrace& trace, const StepSizePolicy& policy,
                                       double eta);

/// The right-hand side of check_pl per row (NaN before tau or when inadmissible).
std::vector<double> pl_envelope_column(const RunTrace& trace, double L, double zeta, double eta,
                                       std::size_t tau);

// Lemma oracles.

using JFunction = std::function<double(HalfInteger)>;

/// n = 1/2, 1, 3/2, ..., 50.
std::vector<HalfInteger> default_lemma21_n_set();

/// Checks (1 - x/n)^{-n} <= 1 + J(n) x for every n in n_set and
/// x = 0.2 i / N, i = 1..N, N = round(0.2 / x_grid_step), plus the limiting
/// form e^x <= 1 + 1.2 x. Violations carry t = 2n (0 for the limit) and
/// at = x.
ViolationReport lemma21_sweep(std::span<const HalfInteger> n_set, double x_grid_step = 1e-3,
                              const JFunction& j = j_constant);

struct Lemma21Tightness {
  // Sweeping n = 1/2 with J = 1.25 must fail.
  ViolationReport half_with_j125;
  // At n = 1, x = 0.2 both sides are 1.25.
  double n1_endpoint_lhs = 0.0;
  double n1_endpoint_rhs = 0.0;
};

Lemma21Tightness lemma21_tightness(double x_grid_step = 1e-3);

/// sum_{k<j} c^k delta <= c^j Q for every j = 1..tau.
bool condition_221(double c, double delta, double Q, std::size_t tau);

/// The same inequality at j = tau only, which is where it binds.
bool condition_221_shortcut(double c, double delta, double Q, std::size_t tau);

/// Parameters of the recursion a_{t+1} <= c a_t + delta (b_{t-1} + ... + b_{t-tau}) - Q b_t
/// (terms with negative index are absent).
struct LemmaInstance {
  double c = 0.5;
  double delta = 0.0;
  double Q = 1.0;
  std::size_t tau = 1;
  std::vector<double> b;
  double a0 = 1.0;

  bool satisfies_condition() const { return condition_221(c, delta, Q, tau); }
};

struct Lemma22Result {
  ViolationReport decay;      // a_{t+1} <= c^{t+1} a_0
  ViolationReport expansion;  // closed form equals the recursion
  std::vector<double> a;      // a_0 .. a_horizon
};

/// Runs the recursion with equality for t = 0..horizon-1, checks the decay
/// claim and compares each a_{t+1} with its coefficient expansion (relative
/// tolerance 1e-10). Throws std::invalid_argument if the instance is
/// malformed, b is shorter than horizon, or the condition fails.
Lemma22Result lemma22_oracle(const LemmaInstance& instance, std::size_t horizon);

inline constexpr double kExpansionTolerance = 1e-10;

/// c uniform on (0, 1), Q on (0, 1], tau on 1..max_tau, delta a uniform
/// fraction of the largest admissible value, a_0 on (0, 10], b_t on [0, 10)
/// with a fifth of the entries zeroed.
LemmaInstance random_lemma_instance(Rng& rng, std::size_t max_tau, std::size_t horizon);

struct Lemma22Battery {
  std::size_t instances = 0;
  ViolationReport decay;      // violations carry at = instance index
  ViolationReport expansion;
};

Lemma22Battery lemma22_battery(std::uint64_t seed, std::size_t instances = 1000,
                               std::size_t max_tau = 8, std::size_t horizon = 200);

// Log-error metrics.

struct ResolutionFloors {
  double dist = 0.0;
  double gap = 0.0;
};

/// Values below these are indistinguishable from zero given the trace's
/// recorded uncertainty (a fixed multiple of it).
ResolutionFloors resolution_floors(const RunTrace& trace);
inline constexpr double kFloorMultiple = 64.0;

struct LogErrorMetrics {
  /// E_t = ln(||x_t - x_*|| / ||x_0 - x_*||) for t = 0.. while above the floor.
  std::vector<double> log_dist;
  /// e_t = ln((f(x_t) - f_*) / (f(x_anchor) - f_*)) for t = anchor.. while
  /// above the floor; empty when the anchor gap itself is not above it.
  std::vector<double> log_gap;
  std::size_t anchor = 0;
};

/// Throws std::domain_error when ||x_0 - x_*|| = 0 and std::invalid_argument
/// when the trace is shorter than anchor + 1 rows.
LogErrorMetrics log_error_metrics(const RunTrace& trace, std::size_t anchor,
                                  ResolutionFloors floors = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::optional<double> r_squared;  // undefined for a constant sequence
  std::size_t points = 0;
  std::size_t first_index = 0;
};

/// Least-squares line through (i, values[i]) over the last
/// ceil(tail_fraction * size) points. Throws std::invalid_argument when that
/// is fewer than 10 points or tail_fraction is outside (0, 1].
SlopeFit slope_fit(std::span<const double> values, double tail_fraction);

// Random-point probes of the problem's analytic properties.

struct ProbeOptions {
  std::size_t points = 1000;
  double spread = 1.0;  // points are center + spread * N(0, I)
};

/// ||g_fd - g|| <= rel_tol ||g|| with central differences of step h.
ViolationReport probe_gradient(const GradientOracle& oracle, const Vector& center, Rng& rng,
                               ProbeOptions options, double h = 1e-5, double rel_tol = 1e-5);

/// ||grad f(x) - grad f(y)|| <= L ||x - y||.
ViolationReport probe_smoothness(const GradientOracle& oracle, double L, const Vector& center,
                                 Rng& rng, ProbeOptions options);

/// f(y) >= f(x) + <grad f(x), y - x> + (mu/2) ||y - x||^2.
ViolationReport probe_strong_convexity(const GradientOracle& oracle, double mu,
                                       const Vector& center, Rng& rng, ProbeOptions options);

/// <x - x_*, grad f(x)> >= (mu L / (mu + L)) ||x - x_*||^2 + ||grad f(x)||^2 / (mu + L),
/// widened by x_star_radius.
ViolationReport probe_coercivity(const GradientOracle& oracle, double mu, double L,
                                 const Vector& x_star, double x_star_radius, Rng& rng,
                                 ProbeOptions options);

/// (1/2) ||grad f(x)||^2 >= zeta (f(x) - f_*), widened by f_star_radius and an
/// absolute floor of 1e-9.
ViolationReport probe_pl(const GradientOracle& oracle, double zeta, double f_star,
                         double f_star_radius, const Vector& center, Rng& rng,
                         ProbeOptions options);

}  // namespace dgd
