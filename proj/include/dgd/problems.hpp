#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>

#include "dgd/core.hpp"

namespace dgd {

enum class ProblemKind { ridge_ls, logistic, pl_ls };

std::string_view to_string(ProblemKind kind);
/// Throws std::invalid_argument for unknown names.
ProblemKind parse_problem_kind(std::string_view name);

/// Extreme eigenvalues of the Gram matrices of A, computed on whichever of
/// A^T A (d x d) or A A^T (m x m) is smaller.
struct GramSpectrum {
  double lambda_max = 0.0;      // shared by A^T A and A A^T
  double lambda_min_ata = 0.0;  // zero when m < d
  double lambda_min_aat = 0.0;  // zero when m > d
};

GramSpectrum gram_spectrum(const Matrix& A);

/// f(x) = (1/m) sum_i (y_i - A_i x)^2 + (mu/2) ||x||^2.
class RidgeLSProblem final : public GradientOracle {
 public:
  RidgeLSProblem(Matrix A, Vector y, double mu_reg);

  const Matrix& A() const { return A_; }
  const Vector& y() const { return y_; }
  double mu_reg() const { return mu_reg_; }
  const GramSpectrum& spectrum() const { return spectrum_; }

  std::size_t dimension() const override { return static_cast<std::size_t>(A_.cols()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  /// L = 2 lambda_max(A^T A)/m + mu, mu = 2 lambda_min(A^T A)/m + mu, zeta = mu.
  CurvatureBounds curvature() const override;

 private:
  Matrix A_;
  Vector y_;
  double mu_reg_;
  GramSpectrum spectrum_;
};

/// f(x) = (1/m) sum_i ln(1 + exp(-y_i A_i x)) + (mu/2) ||x||^2, y_i in {-1, +1}.
class LogisticProblem final : public GradientOracle {
 public:
  LogisticProblem(Matrix A, Vector y, double mu_reg);

  const Matrix& A() const { return A_; }
  const Vector& y() const { return y_; }
  double mu_reg() const { return mu_reg_; }
  const GramSpectrum& spectrum() const { return spectrum_; }

  std::size_t dimension() const override { return static_cast<std::size_t>(A_.cols()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  /// L = lambda_max(A^T A)/(4m) + mu (sigmoid slope is at most 1/4), mu = zeta = mu.
  CurvatureBounds curvature() const override;

 private:
  Matrix A_;
  Vector y_;
  double mu_reg_;
  GramSpectrum spectrum_;
};

/// f(x) = (1/2) ||A x - b||^2 with A wide (d > m) and A A^T positive definite:
/// not strongly convex, but PL with zeta = lambda_min(A A^T).
class PLLeastSquares final : public GradientOracle {
 public:
  /// Throws std::invalid_argument unless d > m and A A^T is positive definite.
  PLLeastSquares(Matrix A, Vector b);

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const GramSpectrum& spectrum() const { return spectrum_; }

  std::size_t dimension() const override { return static_cast<std::size_t>(A_.cols()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  /// L = lambda_max(A^T A), zeta = lambda_min(A A^T), mu = 0.
  CurvatureBounds curvature() const override;

 private:
  Matrix A_;
  Vector b_;
  GramSpectrum spectrum_;
};

using AnyProblem = std::variant<RidgeLSProblem, LogisticProblem, PLLeastSquares>;

ProblemKind kind_of(const AnyProblem& problem);
const GradientOracle& oracle_of(const AnyProblem& problem);

/// Rows of A are i.i.d. standard Gaussian; y_i = s_i + cos(s_i) + xi_i with
/// s_i = A_i . 1 and xi_i ~ N(0, 1/4). Streams: 1 = A, 2 = noise.
RidgeLSProblem gen_regression_data(std::size_t m, std::size_t d, std::uint64_t seed,
                                   double mu_reg = 0.1);

/// First m/2 labels +1, the rest -1; A_i ~ N(y_i 1, I). Stream 1 = A.
/// Throws std::invalid_argument for odd m.
LogisticProblem gen_classification_data(std::size_t m, std::size_t d, std::uint64_t seed,
                                        double mu_reg = 0.1);

/// A and b standard Gaussian, redrawn (streams 16 + 2k and 17 + 2k on attempt
/// k) until A A^T is positive definite. Throws std::runtime_error after
/// kMaxPlAttempts failures.
PLLeastSquares gen_pl_data(std::size_t m, std::size_t d, std::uint64_t seed);
inline constexpr int kMaxPlAttempts = 16;

struct ProblemConstants {
  double L = 0.0;
  double mu = 0.0;
  double zeta = 0.0;
  Vector x_star;
  double f_star = 0.0;
  // Certified bounds on ||x_star - true minimizer|| and |f_star - true minimum|.
  double x_star_radius = 0.0;
  double f_star_radius = 0.0;
};

struct ReferenceMinimum {
  Vector x;
  double f = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
};

/// Delay-free gradient descent with eta = 1/L until ||grad f|| <= tol.
/// Throws std::runtime_error when max_iters is exhausted.
ReferenceMinimum reference_minimizer(const GradientOracle& oracle, const Vector& x0, double tol,
                                     std::size_t max_iters = 1'000'000);

/// x_* = A^T (A A^T)^{-1} b, the minimum-norm solution. Throws
/// std::runtime_error if A A^T is numerically singular.
Vector minimizer_pseudo_inverse(const PLLeastSquares& problem);

ProblemConstants constants_of(const RidgeLSProblem& problem, double tol = 1e-10);
ProblemConstants constants_of(const LogisticProblem& problem, double tol = 1e-10);
ProblemConstants constants_of(const PLLeastSquares& problem);
ProblemConstants constants_of(const AnyProblem& problem, double tol = 1e-10);

}  // namespace dgd
