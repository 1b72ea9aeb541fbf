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

#include "approxbandit/bounds.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/linalg.hpp"

namespace ab = approxbandit;

namespace {
const boost::math::normal kStd;
const double kKappa1 = 0.15866;
}  // namespace

TEST(DegradeAntiConcentration, KnownValues) {
  EXPECT_NEAR(ab::degrade_anti_concentration(kKappa1, 0.0, 2.0), kKappa1 * kKappa1, 1e-12);
  EXPECT_NEAR(ab::degrade_anti_concentration(kKappa1, 0.0, 2.0), 0.025173, 1e-6);
  EXPECT_NEAR(ab::degrade_anti_concentration(kKappa1, 0.1, 2.0), kKappa1 * kKappa1 / 1.2, 1e-12);
  EXPECT_NEAR(ab::degrade_anti_concentration(kKappa1, 0.1, 2.0), 0.020977, 1e-6);
}

TEST(DegradeAntiConcentration, ContractsAndRejectsAlphaAtMostOne) {
  for (double eps : {1e-6, 0.01, 0.1, 1.0})
    for (double a : {1.5, 2.0, 3.0, 10.0}) EXPECT_LT(ab::degrade_anti_concentration(kKappa1, eps, a), kKappa1);
  EXPECT_THROW(ab::degrade_anti_concentration(kKappa1, 0.1, 1.0), ab::InvalidInput);
  EXPECT_THROW(ab::degrade_anti_concentration(kKappa1, 0.1, 0.5), ab::InvalidInput);
  EXPECT_THROW(ab::degrade_anti_concentration(1.2, 0.1, 2.0), ab::InvalidInput);
}

TEST(DegradeConcentrationType1, KnownValues) {
  const auto c = ab::degrade_concentration_type1(4.0, 8.0, 0.1, -1.0);
  EXPECT_NEAR(c.c, 6.0, 1e-12);
  EXPECT_NEAR(c.cp, 9.6, 1e-12);
  const auto z = ab::degrade_concentration_type1(4.0, 8.0, 0.0, -1.0);
  EXPECT_NEAR(z.cp, 8.0, 1e-12);
  EXPECT_THROW(ab::degrade_concentration_type1(4.0, 8.0, 0.1, 0.0), ab::InvalidInput);
  EXPECT_THROW(ab::degrade_concentration_type1(4.0, 8.0, 0.1, 0.5), ab::InvalidInput);
}

TEST(DegradeConcentrationType2, KnownValues) {
  const auto table = ab::normal_quantile_table();
  EXPECT_NEAR(table(0.05), boost::math::quantile(kStd, 0.95), 1e-9);
  EXPECT_NEAR(ab::degrade_concentration_type2(table, 0.0, -1.0, 0.05), table(0.05 * 0.05), 1e-12);
  const double v = ab::degrade_concentration_type2(table, 0.1, -1.0, 0.05);
  EXPECT_NEAR(v, boost::math::quantile(kStd, 1.0 - 0.0025 / 1.2), 1e-9);
  EXPECT_NEAR(v, 2.8653, 1e-4);
  for (double d : {0.3, 0.1, 0.01}) EXPECT_GE(ab::degrade_concentration_type2(table, 0.1, -1.0, d), table(d));
}

TEST(QuantileShiftBound, KnownValues) {
  EXPECT_NEAR(ab::quantile_shift_bound(0.9, 0.0, 2.0), 0.09, 1e-12);
  EXPECT_NEAR(ab::quantile_shift_bound(0.9, 0.1, 2.0), 0.1 - 0.01 / 1.2, 1e-12);
  EXPECT_NEAR(ab::quantile_shift_bound(0.9, 0.1, 2.0), 0.091667, 1e-6);
  EXPECT_NEAR(ab::quantile_shift_bound(1.0 - 1e-9, 0.1, 2.0), 0.0, 1e-8);
  for (double g : {0.1, 0.5, 0.9}) EXPECT_GE(ab::quantile_shift_bound(g, 0.0, 2.0), 0.0);
}

TEST(QuantileShiftBound, RejectsAlphaInUnitInterval) {
  EXPECT_THROW(ab::quantile_shift_bound(0.9, 0.1, 0.0), ab::InvalidInput);
  EXPECT_THROW(ab::quantile_shift_bound(0.9, 0.1, 0.5), ab::InvalidInput);
  EXPECT_THROW(ab::quantile_shift_bound(0.9, 0.1, 1.0), ab::InvalidInput);
  EXPECT_NO_THROW(ab::quantile_shift_bound(0.9, 0.1, -1.0));
}

TEST(BoundConstants, DerivedDegradationDirection) {
  const auto c = ab::BoundConstants::gaussian(0.1);
  EXPECT_LE(c.kappa2, c.kappa1);
  EXPECT_GE(c.c2, c.c1);
  EXPECT_GE(c.c2p, c.c1p);
  EXPECT_GE(c.c_hat2(0.05), c.c_hat1(0.05));
}

TEST(LintsRegretBound, FiniteAndMonotoneInBudget) {
  const ab::ConfidenceParams p{0.5, 1.0, std::sqrt(20.0), 0.05};
  double prev = 0.0;
  for (double eps : {0.0, 0.05, 0.1, 0.2}) {
    const double b = ab::lints_regret_bound(p, ab::BoundConstants::gaussian(eps), 1000, 20);
    EXPECT_TRUE(std::isfinite(b));
    EXPECT_GT(b, prev);
    prev = b;
  }
}

TEST(LintsRegretBound, RateInHorizon) {
  const ab::ConfidenceParams p{0.5, 1.0, std::sqrt(5.0), 0.05};
  const auto c = ab::BoundConstants::gaussian(0.1);
  const double d = 5.0;
  std::vector<double> ratios;
  for (double t : {1e3, 1e4, 1e5})
    ratios.push_back(ab::lints_regret_bound(p, c, static_cast<std::size_t>(t), 5) / (std::pow(d, 1.5) * std::sqrt(t)));
  // Growth across two decades stays below the log^2 T growth.
  const double log2_growth = std::pow(std::log(1e5) / std::log(1e3), 2.0);
  EXPECT_LT(ratios[2] / ratios[0], log2_growth);
}

TEST(LinbucbRegretBound, TypeTwoFactorAtOneSigma) {
  const ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.05};
  const auto c = ab::BoundConstants::gaussian(0.0);
  const std::size_t t = 1000, d = 4;
  const double base = ab::beta(p, t, d) * std::sqrt(2.0 * t * d * std::log(1.0 + t / p.lambda));
  const double b = ab::linbucb_regret_bound(p, c, 0.8413, t, d, ab::AssumptionType::TypeII, ab::Inference::Exact);
  EXPECT_NEAR(b / base, 2.0, 1e-3);
}

TEST(LinbucbRegretBound, TypeTwoOverTypeOneShrinksWithDimension) {
  const ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.05};
  const auto c = ab::BoundConstants::gaussian(0.1);
  double prev = 1e300;
  for (std::size_t d : {4u, 16u, 64u, 256u}) {
    const double r =
        ab::linbucb_regret_bound(p, c, 0.99, 1000, d, ab::AssumptionType::TypeII, ab::Inference::Approximate) /
        ab::linbucb_regret_bound(p, c, 0.99, 1000, d, ab::AssumptionType::TypeI, ab::Inference::Approximate);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(LinbucbRegretBound, RejectsGammaBelowThreshold) {
  const ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.05};
  const auto c = ab::BoundConstants::gaussian(0.1);
  EXPECT_THROW(ab::linbucb_regret_bound(p, c, 0.5, 1000, 4, ab::AssumptionType::TypeI, ab::Inference::Exact),
               ab::InvalidInput);
  EXPECT_THROW(ab::linbucb_regret_bound(p, c, 0.9, 1000, 4, ab::AssumptionType::TypeI, ab::Inference::Approximate),
               ab::InvalidInput);
  EXPECT_NEAR(ab::linbucb_gamma_threshold(c, ab::Inference::Approximate), 1.0 - c.kappa2, 1e-15);
}

TEST(LinbucbRegretBound, TypeOneDivergesAsGammaApproachesOne) {
  const ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.05};
  const auto c = ab::BoundConstants::gaussian(0.0);
  const double b1 = ab::linbucb_regret_bound(p, c, 0.99, 1000, 4, ab::AssumptionType::TypeI, ab::Inference::Exact);
  const double b2 =
      ab::linbucb_regret_bound(p, c, 1.0 - 1e-12, 1000, 4, ab::AssumptionType::TypeI, ab::Inference::Exact);
  EXPECT_GT(b2, 1.5 * b1);
}
