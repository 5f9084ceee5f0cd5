#include "dgd/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dgd {

HalfInteger::HalfInteger(std::uint32_t twice_value) : twice_value_(twice_value) {
  if (twice_value == 0) {
    throw std::invalid_argument("HalfInteger: n must be at least 1/2");
  }
}

HalfInteger HalfInteger::from_value(double n) {
  const double twice = 2.0 * n;
  if (!std::isfinite(twice) || twice < 1.0 || twice != std::floor(twice) ||
      twice > 4294967295.0) {
    throw std::invalid_argument("HalfInteger: " + std::to_string(n) +
                                " is not a positive half-integer");
  }
  return HalfInteger(static_cast<std::uint32_t>(twice));
}

StepSizePolicy::StepSizePolicy(double L, double mu, double zeta, std::uint32_t tau, double q)
    : L_(L), mu_(mu), zeta_(zeta), tau_(tau), q_(q) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("StepSizePolicy: L must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("StepSizePolicy: mu must be nonnegative");
  if (!(zeta >= 0.0)) throw std::invalid_argument("StepSizePolicy: zeta must be nonnegative");
  if (tau < 1) throw std::invalid_argument("StepSizePolicy: tau must be at least 1");
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("StepSizePolicy: q must be positive");
  if (mu > L) throw std::invalid_argument("StepSizePolicy: mu must not exceed L");
}

double j_constant(HalfInteger n) {
  switch (n.twice_value()) {
    case 1:
      return 1.455;
    case 2:
      return 1.25;
    default:
      return 1.2;
  }
}

double alpha(double mu, double L) {
  if (!(mu > 0.0) || !(L > 0.0)) throw std::invalid_argument("alpha: mu and L must be positive");
  if (mu > L) throw std::invalid_argument("alpha: mu must not exceed L");
  return 2.0 * mu * L / (mu + L);
}

double c_tau(std::uint32_t tau) {
  if (tau < 1) throw std::invalid_argument("c_tau: tau must be at least 1");
  const double t = tau;
  const double j = j_constant(HalfInteger::whole(tau));
  return t / (std::sqrt(6.0 * j * t * t + 1.0) + 1.0);
}

double d_tau(std::uint32_t tau) {
  if (tau < 1) throw std::invalid_argument("d_tau: tau must be at least 1");
  const double t = tau;
  const double j = j_constant(HalfInteger::whole(tau));
  return 2.0 * t / (std::sqrt(1.0 + 4.0 * j * t * t) + 1.0);
}

double max_step_strongly_convex(const StepSizePolicy& policy) {
  if (!(policy.mu() > 0.0)) {
    throw std::invalid_argument("max_step_strongly_convex: requires mu > 0");
  }
  const double L = policy.L();
  const double q = policy.q();
  const double t = policy.tau();
  const double j = j_constant(HalfInteger::whole(policy.tau()));
  const double first = L * (1.0 + q) / (5.0 * alpha(policy.mu(), L));
  const double second = t / (std::sqrt(2.0 * j * t * t * (2.0 + 1.0 / q) + 1.0) + 1.0);
  return std::min(first, second) / (t * L);
}

double max_step_pl(const StepSizePolicy& policy) {
  if (!(policy.zeta() > 0.0)) throw std::invalid_argument("max_step_pl: requires zeta > 0");
  const double L = policy.L();
  const double first = L / (5.0 * policy.zeta());
  return std::min(first, d_tau(policy.tau())) / (L * policy.tau());
}

}  // namespace dgd
