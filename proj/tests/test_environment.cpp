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


#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "approxbandit/environment.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/rng.hpp"

namespace ab = approxbandit;
using ab::Vector;

TEST(BanditInstance, FamilyDefinitions) {
  const auto p1 = ab::BanditInstance::make(ab::Family::P1, 5, 10);
  EXPECT_EQ(p1.theta_star, (Vector{{1.0, -1.0, 1.0, -1.0, 1.0}}));
  EXPECT_DOUBLE_EQ(p1.theta_norm(), std::sqrt(5.0));
  const auto p2 = ab::BanditInstance::make(ab::Family::P2, 4, 10);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(p2.theta_star[i], std::sin(i + 1.0));
  const auto p3 = ab::BanditInstance::make(ab::Family::P3, 20, 10, 0.5, 17);
  const auto p3b = ab::BanditInstance::make(ab::Family::P3, 20, 10, 0.5, 17);
  const auto p3c = ab::BanditInstance::make(ab::Family::P3, 20, 10, 0.5, 18);
  EXPECT_EQ(p3.theta_star, p3b.theta_star);
  EXPECT_NE(p3.theta_star, p3c.theta_star);
  EXPECT_GE(p3.theta_star.minCoeff(), 0.0);
  EXPECT_LT(p3.theta_star.maxCoeff(), 1.0);
}

TEST(SampleArmSet, ArmsInUnitBall) {
  auto rng = ab::make_engine(1);
  for (std::size_t d : {1u, 2u, 20u}) {
    const auto arms = ab::sample_arm_set(d, 50, rng);
    ASSERT_EQ(arms.size(), 50u);
    for (const auto& x : arms) EXPECT_LE(x.norm(), 1.0 + 1e-15);
  }
  const auto sphere = ab::sample_arm_set(3, 20, rng, ab::ArmScaling::NormalizeToSphere);
  for (const auto& x : sphere) EXPECT_NEAR(x.norm(), 1.0, 1e-15);
}

TEST(SampleArmSet, HighDimensionArmsLandOnSphere) {
  auto rng = ab::make_engine(2);
  const auto arms = ab::sample_arm_set(20, 10000, rng);
  const auto on_sphere = std::count_if(arms.begin(), arms.end(), [](const Vector& x) { return std::abs(x.norm() - 1.0) < 1e-12; });
  // P(|N(0, I_20)| <= 1) = P(chi2_20 <= 1).
  const double p_inside = boost::math::cdf(boost::math::chi_squared(20), 1.0);
  EXPECT_LT(p_inside, 1e-9);
  EXPECT_EQ(on_sphere, 10000);
}

TEST(SampleArmSet, FixedSeedIsReproducible) {
  auto a = ab::make_engine(3, {ab::stream::kArms});
  auto b = ab::make_engine(3, {ab::stream::kArms});
  const auto x = ab::sample_arm_set(4, 5, a);
  const auto y = ab::sample_arm_set(4, 5, b);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[i]);
}

TEST(Reward, NoiselessAndMean) {
  auto rng = ab::make_engine(4);
  auto inst = ab::BanditInstance::custom(Vector{{1.0, 0.5}}, 2, 0.0);
  EXPECT_DOUBLE_EQ(ab::reward(inst, Vector{{0.0, 1.0}}, rng), 0.5);
  inst.noise_sd = 0.5;
  const int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += ab::reward(inst, Vector{{0.6, 0.8}}, rng);
  EXPECT_NEAR(s / n, 1.0, 3.0 * 0.5 / std::sqrt(n));
}

TEST(StepRegret, KnownValuesAndPermutation) {
  const auto inst = ab::BanditInstance::custom(Vector{{1.0, 0.5}}, 2, 0.0);
  const ab::ArmSet arms = {Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}};
  EXPECT_DOUBLE_EQ(ab::step_regret(inst, arms, 0), 0.0);
  EXPECT_DOUBLE_EQ(ab::step_regret(inst, arms, 1), 0.5);
  const ab::ArmSet three = {Vector{{0.0, 1.0}}, Vector{{0.2, 0.2}}, Vector{{1.0, 0.0}}};
  const ab::ArmSet permuted = {Vector{{1.0, 0.0}}, Vector{{0.2, 0.2}}, Vector{{0.0, 1.0}}};
  EXPECT_DOUBLE_EQ(ab::step_regret(inst, three, 1), ab::step_regret(inst, permuted, 1));
  EXPECT_THROW(ab::step_regret(inst, arms, 2), ab::InvalidInput);
}

TEST(RegretTrace, CumulativeIsRunningSum) {
  ab::RegretTrace t;
  for (double r : {0.5, 0.0, 1.25, 0.25}) t.push(r);
  EXPECT_EQ(t.cumulative, (std::vector<double>{0.5, 0.5, 1.75, 2.0}));
  EXPECT_DOUBLE_EQ(t.final_regret(), 2.0);
}

TEST(EnvironmentStream, NoiseIsIndependentOfArmUse) {
  const auto inst = ab::BanditInstance::make(ab::Family::P2, 3, 4);
  ab::EnvironmentStream a(inst, 9), b(inst, 9);
  for (int t = 0; t < 50; ++t) {
    const auto da = a.next();
    const auto db = b.next();
    EXPECT_EQ(da.noise, db.noise);
    for (std::size_t i = 0; i < da.arms.size(); ++i) EXPECT_EQ(da.arms[i], db.arms[i]);
    // Reward for any arm is its mean plus the shared per-step noise draw.
    EXPECT_DOUBLE_EQ(a.reward(da.arms[t % 4], da.noise), ab::expected_reward(inst, da.arms[t % 4]) + inst.noise_sd * da.noise);
  }
}
