#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dgd/verify.hpp"

namespace dgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double distance_uncertainty(const TraceMeta& meta) {
  return meta.x_star_radius + meta.distance_resolution;
}

double value_uncertainty(const TraceMeta& meta) {
  return meta.f_star_radius + meta.value_resolution;
}

double lower_sq(double d, double r) {
  const double lo = std::max(0.0, d - r);
  return lo * lo;
}

double upper_sq(double d, double r) { return (d + r) * (d + r); }

void require_rows(const RunTrace& trace, const char* who) {
  if (trace.rows.empty()) throw std::invalid_argument(std::string(who) + ": empty trace");
}

void require_tau(const RunTrace& trace, const StepSizePolicy& policy, const char* who) {
  if (trace.meta.tau != policy.tau()) {
    throw std::invalid_argument(std::string(who) + ": trace delay " +
                                std::to_string(trace.meta.tau) + " does not match policy delay " +
                                std::to_string(policy.tau()));
  }
}

double contraction(const StepSizePolicy& policy, double eta) {
  return 1.0 - eta * alpha(policy.mu(), policy.L()) / (1.0 + policy.q());
}

}  // namespace

double thm15_coefficient(const StepSizePolicy& policy, double eta) {
  const double j_half = j_constant(HalfInteger(policy.tau()));
  return 1.0 / (1.0 - j_half * policy.L() * policy.tau() * eta);
}

double thm15_rate(const StepSizePolicy& policy, double eta) {
  return std::sqrt(contraction(policy, eta));
}

double thm11_rate(double mu, double L, double eta) {
  return std::sqrt(1.0 - eta * alpha(mu, L) / 2.0);
}

bool strongly_convex_admissible(const StepSizePolicy& policy, double eta) {
  if (!(policy.mu() > 0.0) || !(eta > 0.0)) return false;
  return eta <= max_step_strongly_convex(policy);
}

double pl_step_limit(double L, double zeta, std::size_t tau) {
  if (tau == 0) return 1.0 / L;
  return max_step_pl(StepSizePolicy(L, 0.0, zeta, static_cast<std::uint32_t>(tau)));
}

std::vector<double> window_gradient_sums(const RunTrace& trace, std::size_t tau) {
  std::vector<double> R(trace.rows.size(), 0.0);
  for (std::size_t t = 1; t < trace.rows.size(); ++t) {
    const std::size_t first = t > tau ? t - tau : 0;
    double sum = 0.0;
    for (std::size_t j = first; j < t; ++j) sum += trace.rows[j].grad_sq;
    R[t] = sum;
  }
  return R;
}

std::vector<double> thm15_bound_column(const RunTrace& trace, const StepSizePolicy& policy,
                                       double eta) {
  std::vector<double> out(trace.rows.size(), kNaN);
  if (trace.rows.empty() || !strongly_convex_admissible(policy, eta)) return out;
  const double coef = thm15_coefficient(policy, eta);
  const double c = contraction(policy, eta);
  const double d0 = trace.rows.front().dist;
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = coef * std::pow(c, 0.5 * static_cast<double>(t)) * d0;
  }
  return out;
}

ViolationReport check_thm15(const RunTrace& trace, const StepSizePolicy& policy, double eta) {
  const std::string id = "thm15_distance";
  require_rows(trace, "check_thm15");
  require_tau(trace, policy, "check_thm15");
  if (!strongly_convex_admissible(policy, eta)) {
    return not_applicable(id, "step size exceeds the strongly convex limit");
  }
  const double r = distance_uncertainty(trace.meta);
  const double coef = thm15_coefficient(policy, eta);
  const double c = contraction(policy, eta);
  const double d0_hi = trace.rows.front().dist + r;
  ReportBuilder rb(id);
  for (const TraceRow& row : trace.rows) {
    const double lhs = std::max(0.0, row.dist - r);
    const double rhs = coef * std::pow(c, 0.5 * static_cast<double>(row.t)) * d0_hi;
    rb.compare(row.t, lhs, rhs);
  }
  return std::move(rb).finish();
}

ViolationReport check_thm21(const RunTrace& trace, const StepSizePolicy& policy, double eta) {
  const std::string id = "thm21_shadow";
  require_rows(trace, "check_thm21");
  require_tau(trace, policy, "check_thm21");
  if (!strongly_convex_admissible(policy, eta)) {
    return not_applicable(id, "step size exceeds the strongly convex limit");
  }
  const double r = distance_uncertainty(trace.meta);
  const double c = contraction(policy, eta);
  const double d0_sq_hi = upper_sq(trace.rows.front().dist, r);
  ReportBuilder rb(id);
  for (const TraceRow& row : trace.rows) {
    const double lhs = lower_sq(std::sqrt(row.shadow_sq), r);
    const double rhs = std::pow(c, static_cast<double>(row.t)) * d0_sq_hi;
    rb.compare(row.t, lhs, rhs);
  }
  return std::move(rb).finish();
}

ViolationReport monitor_prop21(const RunTrace& trace, const StepSizePolicy& policy, double eta) {
  require_rows(trace, "monitor_prop21");
  require_tau(trace, policy, "monitor_prop21");
  if (!(eta > 0.0)) throw std::invalid_argument("monitor_prop21: eta must be positive");
  const double L = policy.L();
  const double a = policy.mu() > 0.0 ? alpha(policy.mu(), L) : 0.0;
  const double tau = static_cast<double>(policy.tau());
  const double c = 1.0 - a * eta / (1.0 + policy.q());
  const double descent = eta / (2.0 * L) - eta * eta;
  const double spread = eta * eta * tau * (a * eta / policy.q() + 2.0 * L * eta);
  const double r = distance_uncertainty(trace.meta);
  const std::vector<double> R = window_gradient_sums(trace, policy.tau());

  ReportBuilder rb("prop21_step");
  for (std::size_t t = 0; t + 1 < trace.rows.size(); ++t) {
    const TraceRow& now = trace.rows[t];
    const double lhs = lower_sq(std::sqrt(trace.rows[t + 1].shadow_sq), r);
    const double carried = c * upper_sq(std::sqrt(now.shadow_sq), r);
    const double rhs = carried - descent * now.grad_sq + spread * R[t];
    const double scale = carried + std::abs(descent) * now.grad_sq + spread * R[t];
    rb.compare(now.t, lhs, rhs, scale);
  }
  return std::move(rb).finish();
}

ViolationReport check_deviation(const RunTrace& trace, double eta) {
  require_rows(trace, "check_deviation");
  const std::size_t tau = trace.meta.tau;
  const std::vector<double> R = window_gradient_sums(trace, tau);
  const double factor = eta * eta * static_cast<double>(tau);
  const double res = trace.meta.distance_resolution;
  ReportBuilder rb("deviation");
  for (std::size_t t = 0; t < trace.rows.size(); ++t) {
    const double lhs = lower_sq(std::sqrt(trace.rows[t].dev_sq), res);
    rb.compare(trace.rows[t].t, lhs, factor * R[t]);
  }
  return std::move(rb).finish();
}

std::vector<double> pl_envelope_column(const RunTrace& trace, double L, double zeta, double eta,
                                       std::size_t tau) {
  std::vector<double> out(trace.rows.size(), kNaN);
  if (trace.rows.size() <= tau || !(zeta > 0.0) || !(eta > 0.0)) return out;
  if (eta > pl_step_limit(L, zeta, tau)) return out;
  const double anchor = trace.rows[tau].cost_gap;
  for (std::size_t t = tau; t < out.size(); ++t) {
    out[t] = std::pow(1.0 - eta * zeta, static_cast<double>(t - tau)) * anchor;
  }
  return out;
}

ViolationReport check_pl(const RunTrace& trace, double L, double zeta, double eta,
                         std::size_t tau) {
  const std::string id = "pl_gap";
  if (trace.rows.size() <= tau) throw std::invalid_argument("check_pl: trace ends before tau");
  if (!(zeta > 0.0)) return not_applicable(id, "no PL constant");
  if (!(eta > 0.0) || eta > pl_step_limit(L, zeta, tau)) {
    return not_applicable(id, "step size exceeds the PL limit");
  }
  const double u = value_uncertainty(trace.meta);
  const double rate = 1.0 - eta * zeta;
  const double anchor_hi = trace.rows[tau].cost_gap + u;
  ReportBuilder rb(id);
  for (std::size_t t = tau; t < trace.rows.size(); ++t) {
    const double lhs = trace.rows[t].cost_gap - u;
    const double rhs = std::pow(rate, static_cast<double>(t - tau)) * anchor_hi;
    rb.compare(trace.rows[t].t, lhs, rhs);
  }
  return std::move(rb).finish();
}

ViolationReport probe_gap_increases(const RunTrace& trace, std::size_t first_t, std::string id) {
  const double u = value_uncertainty(trace.meta);
  ReportBuilder rb(std::move(id));
  for (std::size_t t = first_t; t + 1 < trace.rows.size(); ++t) {
    rb.compare(trace.rows[t + 1].t, trace.rows[t + 1].cost_gap - u, trace.rows[t].cost_gap + u);
  }
  return std::move(rb).finish();
}

}  // namespace dgd
