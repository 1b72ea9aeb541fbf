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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "approxbandit/divergence.hpp"
#include "approxbandit/rng.hpp"

namespace approxbandit {

/// One numeric check. `residual` is the quantity compared against
/// `tolerance`; its meaning is given in `detail`.
struct VerifyRow {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyRow> rows;

  bool passed() const;
  std::size_t failures() const;
};

/// Checks D(X1, X2) = D(a + B X1, a + B X2) in closed form, and
/// D(u^T X1, u^T X2) <= D(X1, X2) for the projection onto `direction`.
struct InvarianceCheck {
  double original = 0.0;
  double transformed = 0.0;
  double projected = 0.0;
  double residual = 0.0;        // |original - transformed|
  double projection_gap = 0.0;  // projected - original; <= 0 expected
  bool passed = false;
};

InvarianceCheck verify_invariance(const GaussianDist& p1, const GaussianDist& p2, const VectorRef& shift,
                                  const Matrix& linear, const VectorRef& direction, double alpha,
                                  double tolerance = 1e-6);

/// Same identity with the transformed pair estimated by Monte Carlo through
/// its density only. `residual` is |mc - closed form| in standard errors.
struct McInvarianceCheck {
  double closed_form = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double residual = 0.0;
  bool passed = false;
};

McInvarianceCheck verify_invariance_mc(const GaussianDist& p1, const GaussianDist& p2, const VectorRef& shift,
                                       const Matrix& linear, double alpha, std::size_t samples, Engine& rng,
                                       double max_std_errors = 3.0);

/// Random one-dimensional Gaussian pair whose Monte-Carlo importance weights
/// have finite variance at every alpha in `alphas`.
std::pair<GaussianDist, GaussianDist> random_gaussian_pair_1d(Engine& rng, const std::vector<double>& alphas);

/// Wraps a Gaussian as a density-only law so that the generic estimators are
/// exercised.
BlackBoxDist as_black_box(const GaussianDist& dist);

/// Closed form vs quadrature vs Monte Carlo on random 1-D Gaussian pairs at
/// each alpha, plus the symmetry identity D_a(P1, P2) = D_{1-a}(P2, P1).
VerifyReport run_oracle_agreement(std::uint64_t seed, std::size_t pairs = 100,
                                  const std::vector<double>& alphas = {-1.0, 2.0, 3.0},
                                  std::size_t mc_samples = 20000);

/// Invariance under random affine maps and data processing under random
/// projections; closed-form and Monte-Carlo cases.
VerifyReport run_invariance_suite(std::uint64_t seed, std::size_t cases = 50, std::size_t mc_samples = 20000);

/// Measured quantile shift of constructed (P, Q) pairs against the
/// single-divergence bound at the pair's certified budget.
VerifyReport run_quantile_shift_suite(std::uint64_t seed, std::size_t pairs = 50);

/// Degraded anti-concentration and concentration constants checked on
/// region-reweighted standard normals whose divergence from N(0, I) equals the
/// budget.
VerifyReport run_concentration_suite(std::uint64_t seed, std::size_t samples = 200000);

/// Mass weight w on a region of probability p (and the compensating weight
/// outside) such that D_alpha(P, Q) = epsilon, where Q reweights P by w on the
/// region. `increase` selects w > 1; otherwise w < 1. Throws InvalidInput when
/// the budget cannot be met.
double region_weight_for_budget(double p, double alpha, double epsilon, bool increase);

/// D_alpha(P, Q) for the two-region reweighting above.
double region_reweight_divergence(double p, double w, double alpha);

}  // namespace approxbandit
