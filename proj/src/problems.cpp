#include "dgd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dgd/rng.hpp"

namespace dgd {

namespace {

constexpr std::uint64_t kStreamDesign = 1;
constexpr std::uint64_t kStreamNoise = 2;
constexpr std::uint64_t kStreamPlBase = 16;

void require_shape(const Matrix& A, const Vector& y, const char* who) {
  if (A.rows() < 1 || A.cols() < 1) {
    throw std::invalid_argument(std::string(who) + ": A must be at least 1 x 1");
  }
  if (y.size() != A.rows()) {
    throw std::invalid_argument(std::string(who) + ": target length must equal rows of A");
  }
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) A(i, j) = rng.gaussian();
  }
  return A;
}

// ln(1 + e^u) without overflow.
double softplus(double u) { return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u))); }

// 1 / (1 + e^{-u}) without overflow.
double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ridge_ls:
      return "ridge_ls";
    case ProblemKind::logistic:
      return "logistic";
    case ProblemKind::pl_ls:
      return "pl_ls";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "ridge_ls") return ProblemKind::ridge_ls;
  if (name == "logistic") return ProblemKind::logistic;
  if (name == "pl_ls") return ProblemKind::pl_ls;
  throw std::invalid_argument("unknown problem '" + std::string(name) +
                              "' (expected ridge_ls, logistic or pl_ls)");
}

GramSpectrum gram_spectrum(const Matrix& A) {
  const bool tall = A.rows() >= A.cols();
  const Matrix gram = tall ? Matrix(A.transpose() * A) : Matrix(A * A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gram_spectrum: symmetric eigensolver failed");
  }
  const Vector& ev = solver.eigenvalues();  // ascending
  GramSpectrum s;
  s.lambda_max = std::max(ev[ev.size() - 1], 0.0);
  const double lambda_min = std::max(ev[0], 0.0);
  if (tall) {
    s.lambda_min_ata = lambda_min;
    s.lambda_min_aat = A.rows() == A.cols() ? lambda_min : 0.0;
  } else {
    s.lambda_min_aat = lambda_min;
  }
  return s;
}

// --- ridge least squares ----------------------------------------------------

RidgeLSProblem::RidgeLSProblem(Matrix A, Vector y, double mu_reg)
    : A_(std::move(A)), y_(std::move(y)), mu_reg_(mu_reg) {
  require_shape(A_, y_, "RidgeLSProblem");
  if (!(mu_reg_ >= 0.0)) throw std::invalid_argument("RidgeLSProblem: mu must be nonnegative");
  spectrum_ = gram_spectrum(A_);
}

double RidgeLSProblem::value(const Vector& x) const {
  const double m = static_cast<double>(A_.rows());
  return (y_ - A_ * x).squaredNorm() / m + 0.5 * mu_reg_ * x.squaredNorm();
}

Vector RidgeLSProblem::gradient(const Vector& x) const {
  const double m = static_cast<double>(A_.rows());
  return (-2.0 / m) * (A_.transpose() * (y_ - A_ * x)) + mu_reg_ * x;
}

CurvatureBounds RidgeLSProblem::curvature() const {
  const double m = static_cast<double>(A_.rows());
  CurvatureBounds c;
  c.L = 2.0 * spectrum_.lambda_max / m + mu_reg_;
  c.mu = 2.0 * spectrum_.lambda_min_ata / m + mu_reg_;
  c.zeta = c.mu;
  return c;
}

// --- logistic regression ----------------------------------------------------

LogisticProblem::LogisticProblem(Matrix A, Vector y, double mu_reg)
    : A_(std::move(A)), y_(std::move(y)), mu_reg_(mu_reg) {
  require_shape(A_, y_, "LogisticProblem");
  if (!(mu_reg_ >= 0.0)) throw std::invalid_argument("LogisticProblem: mu must be nonnegative");
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    if (y_[i] != 1.0 && y_[i] != -1.0) {
      throw std::invalid_argument("LogisticProblem: labels must be -1 or +1");
    }
  }
  spectrum_ = gram_spectrum(A_);
}

double LogisticProblem::value(const Vector& x) const {
  const Vector margins = y_.cwiseProduct(A_ * x);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) loss += softplus(-margins[i]);
  return loss / static_cast<double>(A_.rows()) + 0.5 * mu_reg_ * x.squaredNorm();
}

Vector LogisticProblem::gradient(const Vector& x) const {
  const Vector margins = y_.cwiseProduct(A_ * x);
  Vector weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) weights[i] = -y_[i] * sigmoid(-margins[i]);
  return (A_.transpose() * weights) / static_cast<double>(A_.rows()) + mu_reg_ * x;
}

CurvatureBounds LogisticProblem::curvature() const {
  CurvatureBounds c;
  c.L = spectrum_.lambda_max / (4.0 * static_cast<double>(A_.rows())) + mu_reg_;
  c.mu = mu_reg_;
  c.zeta = mu_reg_;
  return c;
}

// --- PL least squares -------------------------------------------------------

PLLeastSquares::PLLeastSquares(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  require_shape(A_, b_, "PLLeastSquares");
  if (A_.cols() <= A_.rows()) throw std::invalid_argument("PLLeastSquares: requires d > m");
  spectrum_ = gram_spectrum(A_);
  const double floor = spectrum_.lambda_max * static_cast<double>(A_.cols()) *
                       std::numeric_limits<double>::epsilon();
  if (!(spectrum_.lambda_min_aat > floor)) {
    throw std::invalid_argument("PLLeastSquares: A A^T is not positive definite");
  }
}

double PLLeastSquares::value(const Vector& x) const { return 0.5 * (A_ * x - b_).squaredNorm(); }

Vector PLLeastSquares::gradient(const Vector& x) const {
  return A_.transpose() * (A_ * x - b_);
}

CurvatureBounds PLLeastSquares::curvature() const {
  CurvatureBounds c;
  c.L = spectrum_.lambda_max;
  c.mu = 0.0;
  c.zeta = spectrum_.lambda_min_aat;
  return c;
}

// --- variant helpers --------------------------------------------------------

ProblemKind kind_of(const AnyProblem& problem) {
  switch (problem.index()) {
    case 0:
      return ProblemKind::ridge_ls;
    case 1:
      return ProblemKind::logistic;
    default:
      return ProblemKind::pl_ls;
  }
}

const GradientOracle& oracle_of(const AnyProblem& problem) {
  return std::visit([](const auto& p) -> const GradientOracle& { return p; }, problem);
}

// --- generators -------------------------------------------------------------

RidgeLSProblem gen_regression_data(std::size_t m, std::size_t d, std::uint64_t seed,
                                   double mu_reg) {
  if (m < 1 || d < 1) throw std::invalid_argument("gen_regression_data: m and d must be >= 1");
  Rng design(seed, kStreamDesign);
  Rng noise(seed, kStreamNoise);
  Matrix A = gaussian_matrix(m, d, design);
  Vector y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = A.row(i).sum();
    y[i] = s + std::cos(s) + 0.5 * noise.gaussian();
  }
  return RidgeLSProblem(std::move(A), std::move(y), mu_reg);
}

LogisticProblem gen_classification_data(std::size_t m, std::size_t d, std::uint64_t seed,
                                        double mu_reg) {
  if (m < 2 || d < 1) throw std::invalid_argument("gen_classification_data: m >= 2, d >= 1");
  if (m % 2 != 0) throw std::invalid_argument("gen_classification_data: m must be even");
  Rng design(seed, kStreamDesign);
  Matrix A(m, d);
  Vector y(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = i < m / 2 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < d; ++j) A(i, j) = y[i] + design.gaussian();
  }
  return LogisticProblem(std::move(A), std::move(y), mu_reg);
}

PLLeastSquares gen_pl_data(std::size_t m, std::size_t d, std::uint64_t seed) {
  if (m < 1 || d <= m) throw std::invalid_argument("gen_pl_data: requires 1 <= m < d");
  for (int attempt = 0; attempt < kMaxPlAttempts; ++attempt) {
    const auto stream = kStreamPlBase + 2 * static_cast<std::uint64_t>(attempt);
    Rng a_rng(seed, stream);
    Rng b_rng(seed, stream + 1);
    Matrix A = gaussian_matrix(m, d, a_rng);
    Vector b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = b_rng.gaussian();
    try {
      return PLLeastSquares(std::move(A), std::move(b));
    } catch (const std::invalid_argument&) {
      // degenerate draw; try the next stream pair
    }
  }
  throw std::runtime_error("gen_pl_data: no positive definite A A^T after " +
                           std::to_string(kMaxPlAttempts) + " attempts");
}

// --- minimizers -------------------------------------------------------------

ReferenceMinimum reference_minimizer(const GradientOracle& oracle, const Vector& x0, double tol,
                                     std::size_t max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("reference_minimizer: tol must be positive");
  if (static_cast<std::size_t>(x0.size()) != oracle.dimension()) {
    throw std::invalid_argument("reference_minimizer: dimension mismatch");
  }
  const double L = oracle.curvature().L;
  if (!(L > 0.0)) throw std::invalid_argument("reference_minimizer: oracle must report L > 0");
  const double eta = 1.0 / L;

  ReferenceMinimum result;
  result.x = x0;
  Vector g = oracle.gradient(result.x);
  for (std::size_t k = 0;; ++k) {
    result.grad_norm = g.norm();
    if (result.grad_norm <= tol) {
      result.iterations = k;
      result.f = oracle.value(result.x);
      return result;
    }
    if (k == max_iters) break;
    result.x -= eta * g;
    g = oracle.gradient(result.x);
  }
  throw std::runtime_error("reference_minimizer: gradient norm " +
                           std::to_string(result.grad_norm) + " above tolerance after " +
                           std::to_string(max_iters) + " iterations");
}

Vector minimizer_pseudo_inverse(const PLLeastSquares& problem) {
  const Matrix& A = problem.A();
  const Matrix outer = A * A.transpose();
  Eigen::LLT<Matrix> llt(outer);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("minimizer_pseudo_inverse: A A^T is singular");
  }
  Vector w = llt.solve(problem.b());
  // One step of iterative refinement on the residual.
  w += llt.solve(problem.b() - outer * w);
  return A.transpose() * w;
}

namespace {

ProblemConstants strongly_convex_constants(const GradientOracle& oracle, double tol) {
  const CurvatureBounds c = oracle.curvature();
  const ReferenceMinimum ref =
      reference_minimizer(oracle, Vector::Zero(static_cast<Eigen::Index>(oracle.dimension())), tol);
  ProblemConstants k;
  k.L = c.L;
  k.mu = c.mu;
  k.zeta = c.zeta;
  k.x_star = ref.x;
  k.f_star = ref.f;
  // Strong convexity: ||x - x_*|| <= ||grad f(x)|| / mu and
  // f(x) - f_* <= ||grad f(x)||^2 / (2 mu).
  k.x_star_radius = ref.grad_norm / c.mu;
  k.f_star_radius = ref.grad_norm * ref.grad_norm / (2.0 * c.mu);
  return k;
}

}  // namespace

ProblemConstants constants_of(const RidgeLSProblem& problem, double tol) {
  return strongly_convex_constants(problem, tol);
}

ProblemConstants constants_of(const LogisticProblem& problem, double tol) {
  return strongly_convex_constants(problem, tol);
}

ProblemConstants constants_of(const PLLeastSquares& problem) {
  const CurvatureBounds c = problem.curvature();
  ProblemConstants k;
  k.L = c.L;
  k.mu = 0.0;
  k.zeta = c.zeta;
  k.x_star = minimizer_pseudo_inverse(problem);
  // A A^T positive definite makes A x = b consistent, so the minimum is 0.
  k.f_star = 0.0;
  k.x_star_radius = (problem.A() * k.x_star - problem.b()).norm() / std::sqrt(c.zeta);
  k.f_star_radius = 0.0;
  return k;
}

ProblemConstants constants_of(const AnyProblem& problem, double tol) {
  return std::visit(
      [tol](const auto& p) -> ProblemConstants {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, PLLeastSquares>) {
          return constants_of(p);
        } else {
          return constants_of(p, tol);
        }
      },
      problem);
}

}  // namespace dgd
