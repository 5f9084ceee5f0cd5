#include <algorithm>
#include <cmath>

#include "dgd/verify.hpp"

namespace dgd {

namespace {

Vector random_point(const Vector& center, double spread, Rng& rng) {
  Vector x(center.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = center[i] + spread * rng.gaussian();
  return x;
}

}  // namespace

ViolationReport probe_gradient(const GradientOracle& oracle, const Vector& center, Rng& rng,
                               ProbeOptions options, double h, double rel_tol) {
  ReportBuilder rb("gradient_fd", rel_tol);
  for (std::size_t i = 0; i < options.points; ++i) {
    const Vector x = random_point(center, options.spread, rng);
    const Vector g = oracle.gradient(x);
    const Vector fd = finite_difference_grad(oracle, x, h);
    rb.compare(i, (fd - g).norm(), 0.0, g.norm());
  }
  return std::move(rb).finish();
}

ViolationReport probe_smoothness(const GradientOracle& oracle, double L, const Vector& center,
                                 Rng& rng, ProbeOptions options) {
  ReportBuilder rb("smoothness");
  for (std::size_t i = 0; i < options.points; ++i) {
    const Vector x = random_point(center, options.spread, rng);
    const Vector y = random_point(center, options.spread, rng);
    rb.compare(i, (oracle.gradient(x) - oracle.gradient(y)).norm(), L * (x - y).norm());
  }
  return std::move(rb).finish();
}

ViolationReport probe_strong_convexity(const GradientOracle& oracle, double mu,
                                       const Vector& center, Rng& rng, ProbeOptions options) {
  ReportBuilder rb("strong_convexity");
  for (std::size_t i = 0; i < options.points; ++i) {
    const Vector x = random_point(center, options.spread, rng);
    const Vector y = random_point(center, options.spread, rng);
    const double fx = oracle.value(x);
    const double fy = oracle.value(y);
    const double lin = oracle.gradient(x).dot(y - x);
    const double quad = 0.5 * mu * (y - x).squaredNorm();
    const double scale = std::abs(fx) + std::abs(fy) + std::abs(lin) + quad;
    rb.compare(i, fx + lin + quad, fy, scale);
  }
  return std::move(rb).finish();
}

ViolationReport probe_coercivity(const GradientOracle& oracle, double mu, double L,
                                 const Vector& x_star, double x_star_radius, Rng& rng,
                                 ProbeOptions options) {
  ReportBuilder rb("coercivity");
  const double k1 = mu * L / (mu + L);
  const double k2 = 1.0 / (mu + L);
  for (std::size_t i = 0; i < options.points; ++i) {
    const Vector x = random_point(x_star, options.spread, rng);
    const Vector g = oracle.gradient(x);
    const double gn = g.norm();
    const double dist = (x - x_star).norm();
    const double inner_lo = (x - x_star).dot(g) - x_star_radius * gn;
    const double need_hi = k1 * (dist + x_star_radius) * (dist + x_star_radius) + k2 * gn * gn;
    rb.compare(i, need_hi, inner_lo, dist * gn + need_hi);
  }
  return std::move(rb).finish();
}

ViolationReport probe_pl(const GradientOracle& oracle, double zeta, double f_star,
                         double f_star_radius, const Vector& center, Rng& rng,
                         ProbeOptions options) {
  ReportBuilder rb("pl");
  for (std::size_t i = 0; i < options.points; ++i) {
    const Vector x = random_point(center, options.spread, rng);
    const double f = oracle.value(x);
    const double half_g = 0.5 * oracle.gradient(x).squaredNorm();
    const double gap_hi = f - f_star + f_star_radius;
    rb.compare(i, zeta * gap_hi, half_g, std::max({1.0, zeta * std::abs(f), half_g}));
  }
  return std::move(rb).finish();
}

}  // namespace dgd
