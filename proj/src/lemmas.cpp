#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dgd/verify.hpp"

namespace dgd {

namespace {

// J for the n -> infinity form (1 - x/n)^{-n} -> e^x.
constexpr double kJLimit = 1.2;

void sweep_one(ReportBuilder& rb, std::size_t label, double j, std::size_t N,
               const std::function<double(double)>& lhs_of) {
  for (std::size_t i = 1; i <= N; ++i) {
    const double x = 0.2 * static_cast<double>(i) / static_cast<double>(N);
    rb.compare_at(label, x, lhs_of(x), 1.0 + j * x);
  }
}

std::size_t grid_points(double x_grid_step) {
  if (!(x_grid_step > 0.0) || x_grid_step > 0.2) {
    throw std::invalid_argument("lemma21_sweep: grid step must be in (0, 0.2]");
  }
  return static_cast<std::size_t>(std::llround(0.2 / x_grid_step));
}

void absorb(ViolationReport& into, const ViolationReport& from, std::size_t index) {
  into.checked += from.checked;
  into.warnings += from.warnings;
  if (!std::isnan(from.worst_margin)) {
    into.worst_margin = std::isnan(into.worst_margin) ? from.worst_margin
                                                      : std::max(into.worst_margin, from.worst_margin);
  }
  for (Violation v : from.violations) {
    v.at = static_cast<double>(index);
    into.violations.push_back(v);
  }
  into.status = into.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
}

}  // namespace

std::vector<HalfInteger> default_lemma21_n_set() {
  std::vector<HalfInteger> out;
  for (std::uint32_t k = 1; k <= 100; ++k) out.emplace_back(k);
  return out;
}

ViolationReport lemma21_sweep(std::span<const HalfInteger> n_set, double x_grid_step,
                              const JFunction& j) {
  const std::size_t N = grid_points(x_grid_step);
  ReportBuilder rb("lemma21");
  for (const HalfInteger n : n_set) {
    const double nv = n.value();
    sweep_one(rb, n.twice_value(), j(n), N,
              [nv](double x) { return std::pow(1.0 - x / nv, -nv); });
  }
  sweep_one(rb, 0, kJLimit, N, [](double x) { return std::exp(x); });
  return std::move(rb).finish();
}

Lemma21Tightness lemma21_tightness(double x_grid_step) {
  Lemma21Tightness out;
  const HalfInteger half(1);
  out.half_with_j125 = lemma21_sweep(std::span(&half, 1), x_grid_step,
                                     [](HalfInteger) { return 1.25; });
  out.n1_endpoint_lhs = 1.0 / (1.0 - 0.2);
  out.n1_endpoint_rhs = 1.0 + j_constant(HalfInteger::whole(1)) * 0.2;
  return out;
}

bool condition_221(double c, double delta, double Q, std::size_t tau) {
  double sum = 0.0;  // sum_{k<j} c^k
  double pw = 1.0;   // c^j
  for (std::size_t j = 1; j <= tau; ++j) {
    sum += pw;
    pw *= c;
    if (sum * delta > pw * Q) return false;
  }
  return true;
}

bool condition_221_shortcut(double c, double delta, double Q, std::size_t tau) {
  double sum = 0.0;
  for (std::size_t k = 0; k < tau; ++k) sum += std::pow(c, static_cast<double>(k));
  return sum * delta <= std::pow(c, static_cast<double>(tau)) * Q;
}

Lemma22Result lemma22_oracle(const LemmaInstance& in, std::size_t horizon) {
  if (!(in.c > 0.0 && in.c < 1.0) || !(in.delta >= 0.0) || !(in.Q > 0.0) || in.tau < 1 ||
      !(in.a0 > 0.0)) {
    throw std::invalid_argument("lemma22_oracle: parameters out of range");
  }
  if (in.b.size() < horizon) throw std::invalid_argument("lemma22_oracle: b shorter than horizon");
  if (std::any_of(in.b.begin(), in.b.begin() + static_cast<std::ptrdiff_t>(horizon),
                  [](double v) { return !(v >= 0.0); })) {
    throw std::invalid_argument("lemma22_oracle: b must be nonnegative");
  }
  if (!in.satisfies_condition()) {
    throw std::invalid_argument("lemma22_oracle: instance violates the step condition");
  }

  const std::size_t tau = in.tau;
  // pw[k] = c^k, S[n] = sum_{k<n} c^k.
  std::vector<double> pw(horizon + 2, 1.0);
  std::vector<double> S(horizon + 2, 0.0);
  for (std::size_t k = 1; k < pw.size(); ++k) {
    pw[k] = pw[k - 1] * in.c;
    S[k] = S[k - 1] + pw[k - 1];
  }
  const double old_coef = in.delta * S[tau] - pw[tau] * in.Q;  // <= 0 under the condition

  Lemma22Result out;
  out.a.assign(horizon + 1, 0.0);
  out.a[0] = in.a0;
  ReportBuilder decay("lemma22_decay");
  // Zero slack: the tolerance is applied explicitly below.
  ReportBuilder expansion("lemma22_expansion", 0.0);
  double running_scale = in.a0;
  for (std::size_t t = 0; t < horizon; ++t) {
    double window = 0.0;
    for (std::size_t j = t > tau ? t - tau : 0; j < t; ++j) window += in.b[j];
    const double a_next = in.c * out.a[t] + in.delta * window - in.Q * in.b[t];
    out.a[t + 1] = a_next;
    running_scale = std::max(running_scale,
                             std::abs(in.c * out.a[t]) + in.delta * window + in.Q * in.b[t]);

    decay.compare(t + 1, a_next, pw[t + 1] * in.a0, running_scale);

    double closed = pw[t + 1] * in.a0;
    double closed_scale = closed;
    for (std::size_t j = 0; j <= t; ++j) {
      const double coef = (j + tau <= t) ? pw[t - tau - j] * old_coef
                                         : in.delta * S[t - j] - pw[t - j] * in.Q;
      closed += coef * in.b[j];
      closed_scale += std::abs(coef) * in.b[j];
    }
    const double scale = std::max(closed_scale, running_scale);
    expansion.compare(t + 1, std::abs(closed - a_next), kExpansionTolerance * scale, scale);
  }
  out.decay = std::move(decay).finish();
  out.expansion = std::move(expansion).finish();
  return out;
}

LemmaInstance random_lemma_instance(Rng& rng, std::size_t max_tau, std::size_t horizon) {
  if (max_tau < 1) throw std::invalid_argument("random_lemma_instance: max_tau must be positive");
  for (;;) {
    LemmaInstance in;
    in.tau = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_tau));
    in.c = rng.uniform();
    if (in.c == 0.0) continue;
    in.Q = 1.0 - rng.uniform();
    double delta_max = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double pw = 1.0;
    for (std::size_t j = 1; j <= in.tau; ++j) {
      sum += pw;
      pw *= in.c;
      delta_max = std::min(delta_max, pw * in.Q / sum);
    }
    in.delta = rng.uniform() * delta_max;
    in.a0 = 10.0 * (1.0 - rng.uniform());
    in.b.resize(horizon);
    for (double& v : in.b) {
      const double keep = rng.uniform();
      const double value = 10.0 * rng.uniform();
      v = keep < 0.2 ? 0.0 : value;
    }
    if (in.satisfies_condition()) return in;
  }
}

Lemma22Battery lemma22_battery(std::uint64_t seed, std::size_t instances, std::size_t max_tau,
                               std::size_t horizon) {
  Lemma22Battery out;
  out.decay.id = "lemma22_decay";
  out.expansion.id = "lemma22_expansion";
  out.decay.worst_margin = out.expansion.worst_margin = std::numeric_limits<double>::quiet_NaN();
  Rng rng(seed, 3);
  for (std::size_t i = 0; i < instances; ++i) {
    const LemmaInstance in = random_lemma_instance(rng, max_tau, horizon);
    const Lemma22Result r = lemma22_oracle(in, horizon);
    absorb(out.decay, r.decay, i);
    absorb(out.expansion, r.expansion, i);
    ++out.instances;
  }
  return out;
}

}  // namespace dgd
