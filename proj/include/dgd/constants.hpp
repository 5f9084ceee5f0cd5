#pragma once

#include <compare>
#include <cstdint>

namespace dgd {

/// A positive half-integer n = k/2, k >= 1. Stored as k to stay exact.
class HalfInteger {
 public:
  explicit HalfInteger(std::uint32_t twice_value);

  static HalfInteger whole(std::uint32_t n) { return HalfInteger(2 * n); }

  /// Throws std::invalid_argument unless 2n is a positive integer.
  static HalfInteger from_value(double n);

  std::uint32_t twice_value() const { return twice_value_; }
  double value() const { return 0.5 * static_cast<double>(twice_value_); }

  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;

 private:
  std::uint32_t twice_value_;
};

/// Smoothness, curvature, delay and Young's-split parameters for the
/// admissible step-size formulas. Validated on construction.
class StepSizePolicy {
 public:
  StepSizePolicy(double L, double mu, double zeta, std::uint32_t tau, double q = 1.0);

  double L() const { return L_; }
  double mu() const { return mu_; }
  double zeta() const { return zeta_; }
  std::uint32_t tau() const { return tau_; }
  double q() const { return q_; }

 private:
  double L_;
  double mu_;
  double zeta_;
  std::uint32_t tau_;
  double q_;
};

/// 1.455 for n = 1/2, 1.25 for n = 1, 1.2 for n >= 3/2.
double j_constant(HalfInteger n);

/// Harmonic-mean rate constant 2 mu L / (mu + L); requires 0 < mu <= L.
double alpha(double mu, double L);

/// tau / (sqrt(6 J_tau tau^2 + 1) + 1). Increasing in tau, below 1/sqrt(7.2).
double c_tau(std::uint32_t tau);

/// 2 tau / (sqrt(1 + 4 J_tau tau^2) + 1), the second branch of the PL step rule.
double d_tau(std::uint32_t tau);

/// Largest step for which the strongly convex last-iterate bound holds:
///   min{ L(1+q)/(5 alpha), tau/(sqrt(2 J_tau tau^2 (2 + 1/q) + 1) + 1) } / (tau L).
/// Both branches are evaluated; no assumption is made about which binds.
double max_step_strongly_convex(const StepSizePolicy& policy);

/// Largest step for which the PL cost-gap envelope holds:
///   min{ L/(5 zeta), d_tau(tau) } / (L tau).
double max_step_pl(const StepSizePolicy& policy);

}  // namespace dgd
