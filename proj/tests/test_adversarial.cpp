// Copyright 2026 The approxbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "approxbandit/adversarial.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"
#include "approxbandit/rng.hpp"

namespace ab = approxbandit;
using ab::Matrix;
using ab::Vector;

namespace {

ab::GaussianPosterior standard_pi() { return ab::GaussianPosterior::full(Vector{{1.0, 0.0}}, 1.0, Matrix::Identity(2, 2)); }

ab::GaussianPosterior correlated_pi() {
  Matrix c(2, 2);
  c << 0.4, 0.1, 0.1, 0.05;
  return ab::GaussianPosterior::full(Vector{{0.8, 0.1}}, 1.3, c);
}

}  // namespace

TEST(ChooseR, KnownIntervals) {
  EXPECT_NEAR(ab::choose_r(2.0, 0.1), 1.1, 1e-12);
  EXPECT_NEAR(ab::choose_r(1.0, 0.1), 0.5 * (1.0 + std::exp(0.1)), 1e-12);
  EXPECT_NEAR(ab::choose_r(1.0, 0.1), 1.05259, 1e-5);
  // alpha in (0, 1) with a non-positive base: unbounded interval, configured cap.
  EXPECT_DOUBLE_EQ(ab::choose_r(0.5, 10.0, std::nullopt, 3.0), 3.0);
  EXPECT_NEAR(ab::choose_r(2.0, 0.1, 0.9), 0.5 * (1.0 / 0.9 + 1.2), 1e-12);
}

TEST(ChooseR, RejectsBudgetBelowConditionalThreshold) {
  const double threshold = ab::bucb_epsilon_threshold(2.0, 0.8);
  EXPECT_NEAR(threshold, (1.0 / 0.8 - 1.0) / 2.0, 1e-15);
  EXPECT_THROW(ab::choose_r(2.0, 0.1, 0.8), ab::InvalidInput);
  EXPECT_NO_THROW(ab::choose_r(2.0, threshold + 1e-3, 0.8));
}

TEST(TsAdversary, RegionProbabilities) {
  const auto pair = ab::AdversarialPosteriorPair::ts_region(standard_pi(), 1.1);
  EXPECT_NEAR(pair.f_t(), boost::math::cdf(boost::math::normal(1.0, std::sqrt(2.0)), 0.0), 1e-12);
  EXPECT_NEAR(pair.f_t(), 0.23975, 1e-5);
  auto rng = ab::make_engine(1);
  const int n = 100000;
  int upper = 0;
  for (int i = 0; i < n; ++i) {
    const Vector x = ab::ts_adversary_sample(pair, rng);
    upper += x[0] >= x[1] ? 1 : 0;
  }
  const double p = (1.0 - pair.f_t()) / 1.1;
  EXPECT_NEAR(p, 0.69113, 1e-5);
  EXPECT_NEAR(static_cast<double>(upper) / n, p, 3.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST(TsAdversary, UnitReweightMatchesPi) {
  const auto pair = ab::AdversarialPosteriorPair::ts_region(correlated_pi(), 1.0);
  auto rng = ab::make_engine(2);
  const int n = 100000;
  int upper = 0;
  Vector s = Vector::Zero(2);
  for (int i = 0; i < n; ++i) {
    const Vector x = ab::ts_adversary_sample(pair, rng);
    upper += x[0] >= x[1] ? 1 : 0;
    s += x;
  }
  const double p = 1.0 - pair.f_t();
  EXPECT_NEAR(static_cast<double>(upper) / n, p, 3.0 * std::sqrt(p * (1.0 - p) / n));
  EXPECT_NEAR(s[0] / n, 0.8, 3.0 * 1.3 * std::sqrt(0.4 / n));
}

TEST(TsAdversary, ConditionedSamplingInFarTail) {
  // Region {x1 < x2} has probability far below the rejection floor.
  const auto pi = ab::GaussianPosterior::full(Vector{{1.0, 0.0}}, 0.1, Matrix::Identity(2, 2));
  const auto pair = ab::AdversarialPosteriorPair::ts_region(pi, 1.1);
  ASSERT_LT(pair.f_t(), 1e-10);
  auto rng = ab::make_engine(3);
  int lower = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vector x = ab::ts_adversary_sample(pair, rng);
    ASSERT_TRUE(x.allFinite());
    lower += x[0] < x[1] ? 1 : 0;
  }
  const double p = 1.0 - (1.0 - pair.f_t()) / 1.1;
  EXPECT_NEAR(static_cast<double>(lower) / n, p, 4.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST(TsAdversary, CertifiedBudgetAndAnalyticBound) {
  const double r = ab::choose_r(2.0, 0.1);
  for (const auto& pi : {standard_pi(), correlated_pi()}) {
    const auto pair = ab::AdversarialPosteriorPair::ts_region(pi, r);
    const auto cert = ab::certify_budget(pair, 2.0, true);
    EXPECT_LE(cert.divergence, 0.1);
    EXPECT_NEAR(cert.analytic_bound, (r - 1.0) / 2.0, 1e-15);
    EXPECT_LE(cert.divergence, cert.analytic_bound + 1e-6);
    EXPECT_LT(cert.normalization_error, 1e-9);
  }
}

TEST(TsAdversary, RejectsConditionalConstruction) {
  const auto pair = ab::AdversarialPosteriorPair::bucb_conditional(standard_pi(), 1.15, 0.9);
  auto rng = ab::make_engine(4);
  EXPECT_THROW(ab::ts_adversary_sample(pair, rng), ab::InvalidInput);
}

TEST(BucbAdversary, FirstQuantileIsBt) {
  const auto pi = correlated_pi();
  const auto pair = ab::AdversarialPosteriorPair::bucb_conditional(pi, ab::choose_r(2.0, 0.1, 0.9), 0.9);
  const double b = pi.mean()[0] + ab::normal_quantile(0.9) * pi.scale() * std::sqrt(0.4);
  EXPECT_NEAR(pair.b_t(), b, 1e-12);
  const auto [q1, q2] = ab::bucb_adversary_quantiles(pair, 0.9);
  EXPECT_EQ(q1, pair.b_t());
  EXPECT_GT(q2, q1);
  EXPECT_LE(ab::bucb_q_cdf_x2(pair, pair.b_t()), 1.0 / pair.r() + 1e-12);
  EXPECT_NEAR(ab::bucb_q_cdf_x2(pair, q2), 0.9, 1e-9);
}

TEST(BucbAdversary, UnitReweightRecoversPiQuantiles) {
  const auto pi = correlated_pi();
  const auto pair = ab::AdversarialPosteriorPair::bucb_conditional(pi, 1.0, 0.9);
  const auto [q1, q2] = ab::bucb_adversary_quantiles(pair, 0.9);
  EXPECT_NEAR(q1, pi.arm_value_quantile(Vector{{1.0, 0.0}}, 0.9), 1e-9);
  EXPECT_NEAR(q2, pi.arm_value_quantile(Vector{{0.0, 1.0}}, 0.9), 1e-7);
}

TEST(BucbAdversary, NormalizationMarginalAndBudget) {
  const double r = ab::choose_r(2.0, 0.1, 0.9);
  for (const auto& pi : {standard_pi(), correlated_pi(),
                         ab::GaussianPosterior::diagonal(Vector{{0.9, 0.0}}, 2.0, Vector{{0.5, 0.001}})}) {
    const auto pair = ab::AdversarialPosteriorPair::bucb_conditional(pi, r, 0.9);
    const auto cert = ab::certify_budget(pair, 2.0, true);
    EXPECT_LE(cert.divergence, 0.1);
    EXPECT_LT(cert.normalization_error, 1e-9);
    EXPECT_LT(cert.marginal_error, 1e-9);
  }
}

TEST(AdversarialEpisode, BucbAlwaysPicksSuboptimalArm) {
  ab::AdversarialOptions o;
  o.policy = ab::PolicyKind::LinBUCB;
  o.horizon = 200;
  o.nested_check_every = 50;
  const auto ep = ab::run_adversarial_episode(o);
  EXPECT_DOUBLE_EQ(ep.trace.final_regret(), 200.0);
  EXPECT_TRUE(ep.budget_held);
  EXPECT_LE(ep.max_divergence, 0.1);
  EXPECT_LT(ep.max_normalization_error, 1e-9);
  EXPECT_LT(ep.max_marginal_error, 1e-9);
}

TEST(AdversarialEpisode, TsRegretIsLinearAndControlIsNot) {
  ab::AdversarialOptions o;
  o.horizon = 400;
  o.nested_check_every = 0;
  const auto adv = ab::run_adversarial_episode(o);
  EXPECT_TRUE(adv.budget_held);
  EXPECT_LE(adv.max_bound_violation, 1e-6);
  EXPECT_GE(adv.trace.final_regret(), 0.5 * (1.0 - 1.0 / adv.r) * 400.0);
  o.r_override = 1.0;
  const auto ctl = ab::run_adversarial_episode(o);
  EXPECT_LT(ctl.trace.final_regret(), adv.trace.final_regret());
  EXPECT_NEAR(ctl.max_divergence, 0.0, 1e-12);
}
