#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "dgd/core.hpp"
#include "dgd/history_ring.hpp"
#include "test_oracles.hpp"

namespace {

using dgd::DelayedRunState;
using dgd::Vector;
using dgd::testing::DiagonalQuadratic;
using dgd::testing::Flat;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Scalar delayed recursion for f = a x^2 / 2, written out directly.
struct ScalarRun {
  std::vector<double> x;
  std::vector<double> shadow;
};

ScalarRun scalar_oracle(double a, double x0, double eta, std::size_t tau, std::size_t steps) {
  ScalarRun r{{x0}, {x0}};
  for (std::size_t t = 0; t < steps; ++t) {
    const double xt = r.x[t];
    r.x.push_back(t < tau ? x0 : xt - eta * a * r.x[t - tau]);
    r.shadow.push_back(r.shadow[t] - eta * a * xt);
  }
  return r;
}

TEST(HistoryRingTest, WindowSemantics) {
  dgd::HistoryRing<int> ring(3);
  EXPECT_TRUE(ring.empty());
  EXPECT_THROW(ring.newest(), std::out_of_range);
  for (int v = 1; v <= 5; ++v) ring.push(v);
  EXPECT_TRUE(ring.full());
  EXPECT_EQ(ring.size(), 3u);
  EXPECT_EQ(ring.newest(), 5);
  EXPECT_EQ(ring.lag(1), 4);
  EXPECT_EQ(ring.oldest(), 3);
  EXPECT_THROW(ring.lag(3), std::out_of_range);
  EXPECT_THROW(dgd::HistoryRing<int>(0), std::invalid_argument);
}

TEST(DelayedRunStateTest, HandComputedScalarSteps) {
  const auto f = DiagonalQuadratic::scalar(1.0);
  DelayedRunState s(f, vec({1.0}), 0.1, 1);
  EXPECT_EQ(s.shadow()[0], 1.0);
  dgd::advance(s, f);
  EXPECT_EQ(s.iterate()[0], 1.0);
  EXPECT_DOUBLE_EQ(s.shadow()[0], 0.9);
  dgd::advance(s, f);
  EXPECT_DOUBLE_EQ(s.iterate()[0], 0.9);
  EXPECT_DOUBLE_EQ(s.shadow()[0], 0.8);
  dgd::advance(s, f);
  EXPECT_DOUBLE_EQ(s.iterate()[0], 0.8);
}

TEST(DelayedRunStateTest, MatchesScalarRecursionOracle) {
  for (std::size_t tau : {0u, 1u, 3u, 10u}) {
    const double a = 1.7;
    const double eta = 0.05;
    const auto f = DiagonalQuadratic::scalar(a);
    const ScalarRun want = scalar_oracle(a, 2.0, eta, tau, 300);
    DelayedRunState s(f, vec({2.0}), eta, tau);
    for (std::size_t t = 0; t <= 300; ++t) {
      ASSERT_NEAR(s.iterate()[0], want.x[t], 1e-14) << "tau=" << tau << " t=" << t;
      ASSERT_NEAR(s.shadow()[0], want.shadow[t], 1e-14) << "tau=" << tau << " t=" << t;
      if (t < 300) dgd::advance(s, f);
    }
  }
}

TEST(DelayedRunStateTest, WarmupIsBitwiseInitialAndHistoryInvariant) {
  const DiagonalQuadratic f(vec({1.0, 3.0, 0.5}), vec({0.2, -1.0, 4.0}));
  const Vector x0 = vec({0.1, 0.7, -2.3});
  const std::size_t tau = 6;
  DelayedRunState s(f, x0, 0.02, tau);
  for (std::size_t t = 0; t < 40; ++t) {
    EXPECT_EQ(s.t(), t);
    EXPECT_EQ(s.history().size(), std::min(t, tau) + 1);
    if (t <= tau) {
      EXPECT_TRUE((s.iterate().array() == x0.array()).all()) << t;
    }
    dgd::advance(s, f);
  }
}

TEST(DelayedRunStateTest, StepFunctionsDoNotMutate) {
  const DiagonalQuadratic f(vec({2.0, 1.0}), vec({1.0, 1.0}));
  DelayedRunState s(f, vec({0.0, 0.0}), 0.1, 2);
  for (int i = 0; i < 5; ++i) dgd::advance(s, f);
  const Vector x = s.iterate();
  const Vector next = dgd::dgd_step(s);
  const Vector shadow_next = dgd::shadow_step(s);
  EXPECT_TRUE(next.isApprox(x - 0.1 * s.delayed().gradient));
  EXPECT_TRUE(shadow_next.isApprox(s.shadow() - 0.1 * s.gradient()));
  EXPECT_EQ(s.iterate(), x);
}

TEST(DelayedRunStateTest, ZeroGradientIsFixedPoint) {
  const Flat f(2);
  DelayedRunState s(f, vec({1.0, -1.0}), 0.3, 2);
  for (int i = 0; i < 10; ++i) dgd::advance(s, f);
  EXPECT_EQ(s.iterate(), vec({1.0, -1.0}));
  EXPECT_EQ(s.shadow(), vec({1.0, -1.0}));
}

TEST(DelayedRunStateTest, RejectsBadInput) {
  const auto f = DiagonalQuadratic::scalar(1.0);
  EXPECT_THROW(DelayedRunState(f, vec({1.0, 2.0}), 0.1, 1), std::invalid_argument);
  EXPECT_THROW(DelayedRunState(f, vec({1.0}), 0.0, 1), std::invalid_argument);
  DelayedRunState s(f, vec({1.0}), 0.1, 1);
  const Flat wrong(3);
  EXPECT_THROW(dgd::advance(s, wrong), std::invalid_argument);
}

TEST(RunTest, WarmupOnlyTraceIsConstant) {
  const DiagonalQuadratic f(vec({1.0, 2.0}), vec({0.0, 0.0}));
  const std::size_t tau = 7;
  const dgd::RunTrace tr = dgd::run(f, vec({1.0, 1.0}), 0.05, tau, tau, vec({0.0, 0.0}), 0.0);
  ASSERT_EQ(tr.rows.size(), tau + 1);
  for (const dgd::TraceRow& r : tr.rows) {
    EXPECT_EQ(r.dist, tr.rows[0].dist);
    EXPECT_EQ(r.cost_gap, tr.rows[0].cost_gap);
    EXPECT_EQ(r.grad_sq, tr.rows[0].grad_sq);
  }
}

TEST(RunTest, RowsAreConsecutiveAndDeterministic) {
  const DiagonalQuadratic f(vec({1.0, 2.0, 3.0}), vec({1.0, 0.0, -1.0}));
  const auto a = dgd::run(f, Vector::Zero(3), 0.04, 3, 500, vec({1.0, 0.0, -1.0}), 0.0);
  const auto b = dgd::run(f, Vector::Zero(3), 0.04, 3, 500, vec({1.0, 0.0, -1.0}), 0.0);
  EXPECT_EQ(a, b);
  for (std::size_t t = 0; t < a.rows.size(); ++t) EXPECT_EQ(a.rows[t].t, t);
  EXPECT_GT(a.meta.distance_resolution, 0.0);
}

TEST(RunTest, RejectsBadArguments) {
  const auto f = DiagonalQuadratic::scalar(1.0);
  EXPECT_THROW(dgd::run(f, vec({1.0}), -0.1, 1, 10, vec({0.0}), 0.0), std::invalid_argument);
  EXPECT_THROW(dgd::run(f, vec({1.0}), 0.1, 5, 4, vec({0.0}), 0.0), std::invalid_argument);
}

// x_t - x~_t = eta * sum of grad f(x_j) over the window, recomputed directly.
TEST(RunTest, DifferenceIdentity) {
  const DiagonalQuadratic f(vec({0.5, 2.0, 1.0, 3.0}), vec({1.0, -2.0, 0.5, 0.0}));
  const double eta = 0.03;
  const std::size_t tau = 4;
  std::vector<Vector> grads;
  double worst = 0.0;
  dgd::run(f, Vector::Zero(4), eta, tau, 300, Vector::Zero(4), 0.0,
           [&](const DelayedRunState& s) {
             grads.push_back(s.gradient());
             const std::size_t t = s.t();
             Vector sum = Vector::Zero(4);
             const std::size_t first = t > tau ? t - tau : 0;
             for (std::size_t j = first; j < t; ++j) sum += grads[j];
             const Vector diff = s.iterate() - s.shadow();
             const double scale = std::max(1.0, diff.norm());
             worst = std::max(worst, (diff - eta * sum).norm() / scale);
           });
  EXPECT_LE(worst, 1e-10);
}

TEST(FiniteDifferenceTest, Examples) {
  const DiagonalQuadratic half_sq(vec({1.0, 1.0}), vec({0.0, 0.0}));
  const Vector g = dgd::finite_difference_grad(half_sq, vec({2.0, -3.0}), 1e-5);
  EXPECT_NEAR(g[0], 2.0, 1e-8);
  EXPECT_NEAR(g[1], -3.0, 1e-8);
  const Flat flat(3);
  EXPECT_EQ(dgd::finite_difference_grad(flat, vec({1.0, 2.0, 3.0}), 1e-5), Vector::Zero(3));
  EXPECT_THROW(dgd::finite_difference_grad(flat, vec({1.0, 2.0, 3.0}), 0.0),
               std::invalid_argument);
}

}  // namespace
