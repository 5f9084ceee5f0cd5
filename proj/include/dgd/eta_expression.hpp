#pragma once

#include <string_view>

namespace dgd {

/// Values an eta expression may refer to. max_step is the admissible-step
/// limit of the run's problem class; NaN when there is none.
struct EtaContext {
  double L = 0.0;
  double tau = 0.0;
  double mu = 0.0;
  double zeta = 0.0;
  double q = 1.0;
  double max_step = 0.0;
};

/// Evaluates an arithmetic expression such as "0.6/(L*tau)" or "0.5*max_step":
/// numbers, the identifiers L, tau, mu, zeta, q, max_step, binary + - * /,
/// unary minus and parentheses. Throws std::invalid_argument on syntax
/// errors, unknown identifiers, an undefined max_step, or a result that is
/// not a positive finite number.
double evaluate_eta(std::string_view expression, const EtaContext& context);

}  // namespace dgd
