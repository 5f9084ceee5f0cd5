#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dgd/verify.hpp"

namespace {

using dgd::HalfInteger;
using dgd::LemmaInstance;

TEST(Lemma21Test, DefaultSweepPasses) {
  const auto n_set = dgd::default_lemma21_n_set();
  ASSERT_EQ(n_set.size(), 100u);
  EXPECT_EQ(n_set.front(), HalfInteger(1));
  EXPECT_EQ(n_set.back(), HalfInteger::whole(50));
  const auto rep = dgd::lemma21_sweep(n_set);
  EXPECT_EQ(rep.status, dgd::CheckStatus::pass);
  EXPECT_EQ(rep.checked, 101u * 200u);
}

TEST(Lemma21Test, PointExamples) {
  // n = 1/2, x = 0.2: 0.6^{-1/2} against 1 + 1.455 * 0.2.
  EXPECT_NEAR(std::pow(0.6, -0.5), 1.29099, 1e-5);
  EXPECT_LT(std::pow(0.6, -0.5), 1.291);
  const auto tight = dgd::lemma21_tightness();
  EXPECT_NEAR(tight.n1_endpoint_lhs, 1.25, 1e-15);
  EXPECT_NEAR(tight.n1_endpoint_rhs, 1.25, 1e-15);
  // Both sides approach 1 as x -> 0.
  const double x = 1e-9;
  EXPECT_NEAR(std::pow(1.0 - x / 0.5, -0.5), 1.0, 1e-8);
}

TEST(Lemma21Test, ReplacingJHalfBy125Fails) {
  const auto tight = dgd::lemma21_tightness();
  ASSERT_FALSE(tight.half_with_j125.violations.empty());
  const auto& last = tight.half_with_j125.violations.back();
  EXPECT_EQ(last.t, 1u);
  EXPECT_NEAR(last.at, 0.2, 1e-15);
}

TEST(Lemma21Test, ForcedJOneLocatesCounterexample) {
  const HalfInteger half(1);
  const auto rep = dgd::lemma21_sweep(std::span(&half, 1), 1e-3,
                                      [](HalfInteger) { return 1.0; });
  ASSERT_FALSE(rep.violations.empty());
  // (1 - 2x)^{-1/2} > 1 + x from the first grid point on.
  EXPECT_NEAR(rep.violations.front().at, 1e-3, 1e-15);
}

TEST(Lemma21Test, RejectsBadGrid) {
  const auto n_set = dgd::default_lemma21_n_set();
  EXPECT_THROW(dgd::lemma21_sweep(n_set, 0.0), std::invalid_argument);
  EXPECT_THROW(dgd::lemma21_sweep(n_set, 0.3), std::invalid_argument);
}

TEST(Condition221Test, Examples) {
  EXPECT_TRUE(dgd::condition_221(0.3, 0.0, 0.01, 8));
  // j = 3: 0.2 * (1 + 0.9 + 0.81) = 0.542 <= 0.9^3 = 0.729, so the condition holds.
  EXPECT_TRUE(dgd::condition_221(0.9, 0.2, 1.0, 3));
  EXPECT_TRUE(dgd::condition_221(0.9, 0.5, 1.0, 1));
  // delta = 0.3 breaks it at j = 3 (0.813 > 0.729) while j = 1, 2 still hold.
  EXPECT_FALSE(dgd::condition_221(0.9, 0.3, 1.0, 3));
  EXPECT_TRUE(dgd::condition_221(0.9, 0.3, 1.0, 2));
}

TEST(Condition221Test, ShortcutAgreesOnRandomInstances) {
  dgd::Rng rng(2024);
  std::size_t disagreements = 0;
  std::size_t held = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::size_t tau = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
    const double c = rng.uniform();
    const double Q = 1.0 - rng.uniform();
    double sum = 0.0;
    for (std::size_t k = 0; k < tau; ++k) sum += std::pow(c, static_cast<double>(k));
    const double delta = 2.0 * rng.uniform() * std::pow(c, static_cast<double>(tau)) * Q / sum;
    const bool full = dgd::condition_221(c, delta, Q, tau);
    held += full;
    disagreements += full != dgd::condition_221_shortcut(c, delta, Q, tau);
  }
  EXPECT_EQ(disagreements, 0u);
  EXPECT_GT(held, 10000u);
  EXPECT_LT(held, 90000u);
}

TEST(Lemma22Test, ZeroBIsPureGeometricDecay) {
  LemmaInstance in{0.7, 0.05, 1.0, 3, std::vector<double>(50, 0.0), 2.0};
  const auto r = dgd::lemma22_oracle(in, 50);
  for (std::size_t t = 0; t <= 50; ++t) {
    EXPECT_NEAR(r.a[t], std::pow(0.7, static_cast<double>(t)) * 2.0, 1e-15);
  }
  EXPECT_TRUE(r.decay.passed());
  EXPECT_TRUE(r.expansion.passed());
}

// Hand-unrolled recursion for tau = 1: a_{t+1} = c a_t + delta b_{t-1} - Q b_t.
TEST(Lemma22Test, TauOneAgainstDirectRecursion) {
  dgd::Rng rng(8);
  LemmaInstance in{0.9, 0.5, 1.0, 1, {}, 1.0};
  for (int i = 0; i < 200; ++i) in.b.push_back(rng.uniform(0.0, 3.0));
  const auto r = dgd::lemma22_oracle(in, 200);
  double a = 1.0;
  for (std::size_t t = 0; t < 200; ++t) {
    a = 0.9 * a + (t > 0 ? 0.5 * in.b[t - 1] : 0.0) - in.b[t];
    ASSERT_NEAR(r.a[t + 1], a, 1e-12 * (1.0 + std::abs(a)));
  }
  EXPECT_EQ(r.decay.status, dgd::CheckStatus::pass);
  EXPECT_EQ(r.expansion.status, dgd::CheckStatus::pass);
  EXPECT_EQ(r.decay.checked, 200u);
}

TEST(Lemma22Test, RejectsInstancesOutsideTheHypothesis) {
  LemmaInstance bad{0.9, 0.3, 1.0, 3, std::vector<double>(10, 1.0), 1.0};
  EXPECT_THROW(dgd::lemma22_oracle(bad, 10), std::invalid_argument);
  LemmaInstance short_b{0.9, 0.1, 1.0, 3, std::vector<double>(5, 1.0), 1.0};
  EXPECT_THROW(dgd::lemma22_oracle(short_b, 10), std::invalid_argument);
  LemmaInstance negative{0.9, 0.1, 1.0, 3, std::vector<double>(10, -1.0), 1.0};
  EXPECT_THROW(dgd::lemma22_oracle(negative, 10), std::invalid_argument);
  LemmaInstance c_one{1.0, 0.0, 1.0, 3, std::vector<double>(10, 1.0), 1.0};
  EXPECT_THROW(dgd::lemma22_oracle(c_one, 10), std::invalid_argument);
}

TEST(Lemma22Test, RandomInstancesSatisfyTheCondition) {
  dgd::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto in = dgd::random_lemma_instance(rng, 8, 20);
    EXPECT_TRUE(in.satisfies_condition());
    EXPECT_GE(in.tau, 1u);
    EXPECT_LE(in.tau, 8u);
    EXPECT_GT(in.c, 0.0);
    EXPECT_LT(in.c, 1.0);
    EXPECT_GT(in.Q, 0.0);
    EXPECT_GE(in.delta, 0.0);
  }
}

TEST(Lemma22Test, BatteryPasses) {
  const auto battery = dgd::lemma22_battery(42, 1000, 8, 200);
  EXPECT_EQ(battery.instances, 1000u);
  EXPECT_EQ(battery.decay.status, dgd::CheckStatus::pass);
  EXPECT_EQ(battery.expansion.status, dgd::CheckStatus::pass);
  EXPECT_EQ(battery.decay.checked, 200000u);
}

}  // namespace
