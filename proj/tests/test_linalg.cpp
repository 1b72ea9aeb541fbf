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
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "approxbandit/errors.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/rng.hpp"

namespace ab = approxbandit;
using ab::Matrix;
using ab::Vector;

namespace {

Vector unit_ball_arm(std::size_t d, ab::Engine& rng) {
  Vector x(d);
  for (auto& v : x) v = ab::standard_normal(rng);
  return x / std::max(1.0, x.norm());
}

Vector v2(double a, double b) { return Vector{{a, b}}; }

Matrix dense_inverse(const Matrix& m) { return m.inverse(); }

}  // namespace

TEST(RlsState, SingleUpdateTwoByTwo) {
  ab::RlsState s(2, 1.0);
  s.update(Vector::Unit(2, 0), 1.0);
  EXPECT_EQ(s.step(), 1u);
  EXPECT_DOUBLE_EQ(s.design()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s.design()(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(s.design()(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.design_inv()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.design_inv()(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(s.estimate()[0], 0.5);
  EXPECT_DOUBLE_EQ(s.estimate()[1], 0.0);
}

TEST(RlsState, ZeroArmLeavesDesignUnchanged) {
  auto rng = ab::make_engine(3);
  ab::RlsState s(3, 1.0);
  for (int i = 0; i < 5; ++i) s.update(unit_ball_arm(3, rng), 0.3);
  const Matrix v = s.design(), vi = s.design_inv();
  const Vector est = s.estimate();
  s.update(Vector::Zero(3), 17.0);
  EXPECT_EQ(s.design(), v);
  EXPECT_LE(ab::max_abs_diff(s.design_inv(), vi), 1e-15);
  EXPECT_LE((s.estimate() - est).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RlsState, InverseMatchesDenseAfterFiftyUpdates) {
  auto rng = ab::make_engine(11);
  ab::RlsState s(5, 1.0);
  for (int i = 0; i < 50; ++i) s.update(unit_ball_arm(5, rng), ab::standard_normal(rng));
  EXPECT_LE(ab::max_abs_diff(s.design_inv(), dense_inverse(s.design())), 1e-8);
  const Matrix prod = s.design() * s.design_inv();
  EXPECT_LE(ab::max_abs_diff(prod, Matrix::Identity(5, 5)), 1e-8);
}

TEST(RlsState, DesignReplaysAsSumOfOuterProducts) {
  auto rng = ab::make_engine(12);
  ab::RlsState s(4, 0.5);
  Matrix v = 0.5 * Matrix::Identity(4, 4);
  Vector b = Vector::Zero(4);
  for (int i = 0; i < 300; ++i) {
    const Vector x = unit_ball_arm(4, rng);
    const double r = ab::standard_normal(rng);
    s.update(x, r);
    v += x * x.transpose();
    b += x * r;
  }
  EXPECT_LE(ab::max_abs_diff(s.design(), v), 1e-12);
  EXPECT_LE((s.moment() - b).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((s.estimate() - v.llt().solve(b)).cwiseAbs().maxCoeff(), 1e-9);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s.design());
  EXPECT_GE(eig.eigenvalues().minCoeff(), 0.5 - 1e-12);
}

TEST(RlsState, RejectsNonFiniteInput) {
  ab::RlsState s(2, 1.0);
  EXPECT_THROW(s.update(Vector::Constant(2, std::numeric_limits<double>::quiet_NaN()), 1.0), ab::InvalidInput);
  EXPECT_THROW(s.update(Vector::Unit(2, 0), std::numeric_limits<double>::infinity()), ab::InvalidInput);
  EXPECT_THROW(s.update(Vector::Unit(3, 0), 1.0), ab::InvalidInput);
  EXPECT_EQ(s.step(), 0u);
}

TEST(DiagonalApproxState, SingleUpdate) {
  ab::DiagonalApproxState s(2, 1.0);
  s.update(Vector::Unit(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(s.diag()[0], 2.0);
  EXPECT_DOUBLE_EQ(s.diag()[1], 1.0);
  EXPECT_DOUBLE_EQ(s.diag_inv()[0], 0.5);
  EXPECT_DOUBLE_EQ(s.diag_inv()[1], 1.0);
}

TEST(DiagonalApproxState, ZeroArmOnlyAdvancesStep) {
  ab::DiagonalApproxState s(2, 1.0);
  s.update(Vector::Zero(2), 3.0);
  EXPECT_EQ(s.step(), 1u);
  EXPECT_EQ(s.diag(), Vector::Ones(2));
  EXPECT_EQ(s.moment(), Vector::Zero(2));
}

TEST(DiagonalApproxState, DiagonalEqualsExactDesignDiagonal) {
  auto rng = ab::make_engine(5);
  ab::RlsState exact(6, 1.0);
  ab::DiagonalApproxState approx(6, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vector x = unit_ball_arm(6, rng);
    const double r = ab::standard_normal(rng);
    exact.update(x, r);
    approx.update(x, r);
  }
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(approx.diag()[i], exact.design()(i, i));
    EXPECT_GE(approx.diag()[i], 1.0);
    EXPECT_NEAR(approx.diag()[i] * approx.diag_inv()[i], 1.0, 1e-12);
  }
  EXPECT_EQ(approx.moment(), exact.moment());
}

TEST(Beta, KnownValues) {
  ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.1};
  EXPECT_NEAR(ab::beta(p, 0, 2), 0.5 * std::sqrt(2.0 * std::log(10.0)) + 1.0, 1e-12);
  EXPECT_NEAR(ab::beta(p, 0, 2), 2.07299, 1e-5);
  p.delta = 1.0 - 1e-12;
  EXPECT_NEAR(ab::beta(p, 0, 5), 1.0, 1e-5);
}

TEST(Beta, MonotoneInStepDimensionAndDelta) {
  const ab::ConfidenceParams p{0.5, 1.0, 1.0, 0.05};
  EXPECT_LT(ab::beta(p, 0, 3), ab::beta(p, 10, 3));
  EXPECT_LT(ab::beta(p, 10, 3), ab::beta(p, 100, 3));
  EXPECT_LT(ab::beta(p, 10, 3), ab::beta(p, 10, 4));
  ab::ConfidenceParams q = p;
  q.delta = 0.01;
  EXPECT_GT(ab::beta(q, 10, 3), ab::beta(p, 10, 3));
}

TEST(Beta, RejectsBadParams) {
  EXPECT_THROW(ab::beta({0.5, 1.0, 1.0, 0.0}, 0, 2), ab::InvalidInput);
  EXPECT_THROW(ab::beta({0.5, 1.0, 1.0, 1.0}, 0, 2), ab::InvalidInput);
  EXPECT_THROW(ab::beta({-0.1, 1.0, 1.0, 0.5}, 0, 2), ab::InvalidInput);
  EXPECT_THROW(ab::beta({0.5, 0.0, 1.0, 0.5}, 0, 2), ab::InvalidInput);
}

TEST(WeightedNorm, KnownValues) {
  EXPECT_DOUBLE_EQ(ab::weighted_norm(Matrix::Identity(2, 2), v2(3, 4)), 5.0);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = 1.0;
  EXPECT_NEAR(ab::weighted_norm(m, v2(2, 0)), 1.0, 1e-15);
  EXPECT_NEAR(ab::weighted_norm_diag(v2(4, 1), v2(2, 0)), 1.0, 1e-15);
  EXPECT_EQ(ab::weighted_norm(m, Vector::Zero(2)), 0.0);
}

TEST(EllipticPotential, BoundHoldsOnRandomSequences) {
  auto rng = ab::make_engine(21);
  for (std::size_t d : {2u, 5u, 20u}) {
    std::vector<Vector> arms;
    for (int t = 0; t < 500; ++t) arms.push_back(unit_ball_arm(d, rng));
    EXPECT_LE(ab::elliptic_potential(arms, 1.0), ab::elliptic_potential_bound(d, arms.size(), 1.0));
  }
}

// Property: over many seeds, rank-1 updates never drift past the tolerance
// of a dense inverse.
TEST(RlsState, PropertyLongSequencesStayAccurate) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rng = ab::make_engine(seed, {99});
    ab::RlsState s(8, 1.0);
    for (int i = 0; i < 2000; ++i) s.update(unit_ball_arm(8, rng), ab::standard_normal(rng));
    EXPECT_LE(ab::max_abs_diff(s.design_inv(), dense_inverse(s.design())), 1e-8) << "seed " << seed;
  }
}
