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
#include <span>

#include "approxbandit/types.hpp"

namespace approxbandit {

/// Confidence-ellipsoid parameters: noise sub-Gaussian constant, ridge
/// regularizer, norm bound on the true parameter, failure probability.
struct ConfidenceParams {
  double nu = 0.5;
  double lambda = 1.0;
  double s_bound = 1.0;
  double delta = 0.05;

  /// Throws InvalidInput unless nu >= 0, lambda > 0, s_bound > 0, delta in (0,1).
  void validate() const;
};

/// Self-normalized confidence radius
///   beta_t(delta) = nu * sqrt(2 log((lambda + t)^(d/2) lambda^(-d/2) / delta)) + sqrt(lambda) S.
/// Uses params.delta; callers wanting delta' substitute it into a copy.
double beta(const ConfidenceParams& params, std::uint64_t step, std::size_t dim);

/// Regularized least-squares state: V = lambda I + sum x x^T, its inverse,
/// b = sum x r and theta_hat = V^{-1} b.
///
/// The inverse is maintained with the Sherman-Morrison identity and fully
/// recomputed from V every kRefreshInterval updates so that V * V^{-1}
/// stays within 1e-8 of the identity.
class RlsState {
 public:
  static constexpr std::uint64_t kRefreshInterval = 256;

  RlsState(std::size_t dim, double lambda);

  /// Absorbs one (arm, reward) pair. Throws InvalidInput on non-finite input
  /// or a dimension mismatch.
  void update(const VectorRef& arm, double reward);

  /// Recomputes V^{-1} by a dense Cholesky solve.
  void refresh_inverse();

  std::size_t dim() const noexcept { return static_cast<std::size_t>(moment_.size()); }
  double lambda() const noexcept { return lambda_; }
  std::uint64_t step() const noexcept { return step_; }
  const Matrix& design() const noexcept { return design_; }
  const Matrix& design_inv() const noexcept { return design_inv_; }
  const Vector& moment() const noexcept { return moment_; }
  const Vector& estimate() const noexcept { return estimate_; }

 private:
  double lambda_;
  std::uint64_t step_ = 0;
  std::uint64_t since_refresh_ = 0;
  Matrix design_;
  Matrix design_inv_;
  Vector moment_;
  Vector estimate_;
};

/// Whether D^{-1} replaces V^{-1} in the mean as well as the covariance.
enum class ApproxMode { CovOnly, MeanAndCov };

/// Diagonal surrogate D = diag(V) with elementwise inverse. Only the diagonal
/// and b are tracked; in CovOnly mode the exact mean must come from an
/// accompanying RlsState.
class DiagonalApproxState {
 public:
  DiagonalApproxState(std::size_t dim, double lambda, ApproxMode mode = ApproxMode::CovOnly);

  void update(const VectorRef& arm, double reward);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(diag_.size()); }
  double lambda() const noexcept { return lambda_; }
  std::uint64_t step() const noexcept { return step_; }
  ApproxMode mode() const noexcept { return mode_; }
  const Vector& diag() const noexcept { return diag_; }
  const Vector& diag_inv() const noexcept { return diag_inv_; }
  const Vector& moment() const noexcept { return moment_; }

  /// D^{-1} b.
  Vector diagonal_estimate() const;

 private:
  double lambda_;
  ApproxMode mode_;
  std::uint64_t step_ = 0;
  Vector diag_;
  Vector diag_inv_;
  Vector moment_;
};

/// sqrt(x^T M^{-1} x) for an SPD matrix M (solved, not inverted).
double weighted_norm(const Matrix& m, const VectorRef& x);

/// sqrt(x^T D^{-1} x) for a positive diagonal D given as a vector.
double weighted_norm_diag(const Vector& diag, const VectorRef& x);

/// sqrt(x^T A x) when A = M^{-1} is already at hand.
double quadratic_norm(const Matrix& inverse, const VectorRef& x);
double quadratic_norm_diag(const Vector& inverse_diag, const VectorRef& x);

/// sum_s ||x_s||^2_{V_s^{-1}} over the sequence, V_1 = lambda I.
double elliptic_potential(std::span<const Vector> arms, double lambda);

/// 2 d log(1 + t / lambda).
double elliptic_potential_bound(std::size_t dim, std::size_t steps, double lambda);

/// Max-absolute-entry norm of A - B.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const VectorRef& x, const char* what);

}  // namespace approxbandit
