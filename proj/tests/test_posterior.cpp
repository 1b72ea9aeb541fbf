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
#include <memory>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"
#include "approxbandit/posterior.hpp"
#include "approxbandit/rng.hpp"

namespace ab = approxbandit;
using ab::Matrix;
using ab::Vector;

namespace {
const boost::math::normal kStd;
}

TEST(GaussianPosterior, ZeroScaleReturnsMean) {
  auto rng = ab::make_engine(1);
  const Vector m = Vector::LinSpaced(4, -1.0, 2.0);
  const auto post = ab::GaussianPosterior::full(m, 0.0, Matrix::Identity(4, 4));
  EXPECT_EQ(post.sample(rng), m);
}

TEST(GaussianPosterior, StandardSampleMoments) {
  auto rng = ab::make_engine(2);
  const auto post = ab::GaussianPosterior::full(Vector::Zero(3), 1.0, Matrix::Identity(3, 3));
  const int n = 100000;
  Vector s = Vector::Zero(3);
  Matrix s2 = Matrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const Vector x = post.sample(rng);
    s += x;
    s2 += x * x.transpose();
  }
  s /= n;
  s2 /= n;
  EXPECT_LE(s.cwiseAbs().maxCoeff(), 0.02);
  EXPECT_LE((s2 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(GaussianPosterior, DiagonalScaleAndVariance) {
  auto rng = ab::make_engine(3);
  const auto post = ab::GaussianPosterior::diagonal(Vector::Zero(2), 2.0, Vector{{0.25, 1.0}});
  const int n = 100000;
  Vector s2 = Vector::Zero(2);
  for (int i = 0; i < n; ++i) s2 += post.sample(rng).cwiseAbs2();
  const Vector sd = (s2 / n).cwiseSqrt();
  EXPECT_NEAR(sd[0], 1.0, 0.02);
  EXPECT_NEAR(sd[1], 2.0, 0.04);
}

TEST(GaussianPosterior, FullCovarianceStandardizes) {
  auto rng = ab::make_engine(4);
  Matrix c(2, 2);
  c << 2.0, 0.6, 0.6, 0.5;
  const auto post = ab::GaussianPosterior::full(Vector{{1.0, -1.0}}, 1.5, c);
  const int n = 100000;
  Matrix s2 = Matrix::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    const Vector z = post.standardize(post.sample(rng));
    s2 += z * z.transpose();
  }
  EXPECT_LE((s2 / n - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(GaussianPosterior, RejectsNonSpdCovariance) {
  Matrix c(2, 2);
  c << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(ab::GaussianPosterior::full(Vector::Zero(2), 1.0, c), ab::InvalidInput);
  EXPECT_THROW(ab::GaussianPosterior::diagonal(Vector::Zero(2), 1.0, Vector{{1.0, 0.0}}), ab::InvalidInput);
  EXPECT_THROW(ab::GaussianPosterior::full(Vector::Zero(2), -1.0, Matrix::Identity(2, 2)), ab::InvalidInput);
}

TEST(ArmValueQuantile, KnownValues) {
  const auto post = ab::GaussianPosterior::full(Vector{{1.0, 0.0}}, 1.0, Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(post.arm_value_quantile(Vector{{1.0, 0.0}}, 0.5), 1.0);
  EXPECT_NEAR(post.arm_value_quantile(Vector{{1.0, 0.0}}, 0.9), 1.0 + boost::math::quantile(kStd, 0.9), 1e-12);
  EXPECT_NEAR(post.arm_value_quantile(Vector{{1.0, 0.0}}, 0.9), 2.28155, 1e-5);
  EXPECT_EQ(post.arm_value_quantile(Vector::Zero(2), 0.99), 0.0);
  EXPECT_THROW(post.arm_value_quantile(Vector{{1.0, 0.0}}, 1.0), ab::InvalidInput);
  EXPECT_THROW(post.arm_value_quantile(Vector{{1.0, 0.0}}, 0.0), ab::InvalidInput);
}

TEST(ArmValueQuantile, IncreasingInGamma) {
  const auto post = ab::GaussianPosterior::diagonal(Vector{{0.3, -0.2}}, 0.7, Vector{{0.5, 2.0}});
  const Vector arm{{0.6, 0.8}};
  double prev = -1e300;
  for (double g = 0.01; g < 1.0; g += 0.01) {
    const double q = post.arm_value_quantile(arm, g);
    EXPECT_GT(q, prev);
    prev = q;
  }
}

TEST(ArmValueQuantile, MatchesEmpiricalQuantile) {
  auto rng = ab::make_engine(5);
  Matrix c(2, 2);
  c << 1.0, 0.3, 0.3, 0.8;
  const auto post = ab::GaussianPosterior::full(Vector{{0.2, 0.4}}, 1.3, c);
  const Vector arm{{0.6, -0.8}};
  std::vector<double> values(1000000);
  for (auto& v : values) v = arm.dot(post.sample(rng));
  for (double g : {0.1, 0.6, 0.9}) {
    auto copy = values;
    const auto est = ab::empirical_quantile(copy, g);
    EXPECT_NEAR(est.value, post.arm_value_quantile(arm, g), 3.0 * est.std_error) << "gamma " << g;
  }
}

TEST(ArmValueQuantile, AntiConcentrationQuantileLink) {
  // The (1 - kappa1)-quantile of the arm value sits one posterior sd above the mean.
  const auto post = ab::GaussianPosterior::full(Vector{{0.5, 0.1}}, 2.0, Matrix::Identity(2, 2));
  const Vector arm{{0.6, 0.8}};
  const double kappa1 = ab::normal_sf(1.0);
  EXPECT_NEAR(post.arm_value_quantile(arm, 1.0 - kappa1), arm.dot(post.mean()) + post.scale() * post.arm_norm(arm),
              1e-9);
}

TEST(CertifyAntiConcentration, StandardNormalTail) {
  auto rng = ab::make_engine(6);
  const ab::StandardNormalShape shape(5);
  const auto est = ab::certify_anti_concentration(shape, 8, 100000, rng);
  // Minimum over directions biases low by at most a few half-widths.
  EXPECT_NEAR(est.kappa1_hat, 0.158655, 2.0 * est.ci_halfwidth);
  EXPECT_GT(est.ci_halfwidth, 0.0);
}

TEST(CertifyAntiConcentration, ShiftedAndShrunkShapes) {
  auto rng = ab::make_engine(7);
  auto base = std::make_shared<ab::StandardNormalShape>(1);
  const ab::AffineShape shifted(base, Vector::Constant(1, 10.0), 1.0);
  EXPECT_GT(ab::certify_anti_concentration(shifted, 1, 10000, rng).kappa1_hat, 0.0);
  const ab::AffineShape shrunk(base, Vector::Zero(1), 0.01);
  EXPECT_LT(ab::certify_anti_concentration(shrunk, 4, 10000, rng).kappa1_hat, 1e-3);
  EXPECT_THROW(ab::certify_anti_concentration(shrunk, 4, 999, rng), ab::InvalidInput);
}

TEST(CertifyAntiConcentration, HalfwidthShrinksWithSamples) {
  auto rng = ab::make_engine(8);
  const ab::StandardNormalShape shape(2);
  const auto small = ab::certify_anti_concentration(shape, 1, 10000, rng);
  const auto large = ab::certify_anti_concentration(shape, 1, 160000, rng);
  EXPECT_NEAR(small.ci_halfwidth / large.ci_halfwidth, 4.0, 0.3);
}

TEST(CertifyConcentrationType2, NormalQuantileIsDimensionFree) {
  const double expected = boost::math::quantile(kStd, 0.95);
  std::vector<ab::QuantileEstimate> ests;
  for (std::size_t d : {2u, 20u, 200u}) {
    auto rng = ab::make_engine(9, {d});
    const ab::StandardNormalShape shape(d);
    ests.push_back(ab::certify_concentration_type2(shape, 0.05, 1, 100000, rng));
    EXPECT_NEAR(ests.back().value, expected, 4.0 * ests.back().std_error) << "d = " << d;
    EXPECT_NEAR(ests.back().value, 1.6449, 0.03);
  }
  for (std::size_t i = 1; i < ests.size(); ++i) {
    const double se = std::hypot(ests[i].std_error, ests[0].std_error);
    EXPECT_LT(std::abs(ests[i].value - ests[0].value), 3.0 * se);
  }
}

TEST(CertifyConcentrationType2, MedianAndOneSigma) {
  auto rng = ab::make_engine(10);
  const ab::StandardNormalShape shape(3);
  EXPECT_NEAR(ab::certify_concentration_type2(shape, 0.5, 1, 100000, rng).value, 0.0, 0.02);
  EXPECT_NEAR(ab::certify_concentration_type2(shape, 0.1587, 1, 100000, rng).value, 1.0, 0.03);
}

TEST(CertifyConcentrationType1, FeasibleAndInfeasibleCandidates) {
  auto rng = ab::make_engine(11);
  const ab::StandardNormalShape shape(2);
  const auto report = ab::certify_concentration_type1(shape, {0.1, 0.05, 0.01}, 100000, rng);
  // The norm of a standard bivariate normal has (1 - delta)-quantile sqrt(chi2_2 quantile).
  const boost::math::chi_squared chi2(2);
  EXPECT_NEAR(report.norm_quantiles[0].value, std::sqrt(boost::math::quantile(chi2, 0.9)), 0.03);
  EXPECT_NEAR(report.norm_quantiles[0].value, 2.15, 0.02);
  EXPECT_TRUE(ab::type1_feasible(report, 2, 4.0, 8.0));
  EXPECT_NEAR(ab::type1_radius(2, 4.0, 8.0, 0.1), std::sqrt(8.0 * std::log(160.0)), 1e-12);
  EXPECT_FALSE(ab::type1_feasible(report, 2, 0.01, 1.0));
}

TEST(CertifyConcentrationType1, RadiusStaysPositiveNearDeltaOne) {
  EXPECT_GT(ab::type1_radius(2, 4.0, 1.0, 1.0 - 1e-12), 0.0);
}

TEST(CertifyWellBehaved, GaussianCertificate) {
  auto rng = ab::make_engine(12);
  const ab::StandardizedPosteriorShape shape(
      ab::GaussianPosterior::diagonal(Vector{{0.5, -0.5, 0.0}}, 3.0, Vector{{0.1, 1.0, 4.0}}));
  ab::CertifyOptions options;
  options.samples = 50000;
  options.directions = 8;
  const auto cert = ab::certify_well_behaved(shape, options, rng);
  EXPECT_GT(cert.anti_concentration.kappa1_hat, 0.13);
  EXPECT_LT(cert.anti_concentration.kappa1_hat, 0.17);
  EXPECT_FALSE(cert.caveat.empty());
}
