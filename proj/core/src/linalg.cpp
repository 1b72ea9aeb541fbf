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

#include "approxbandit/linalg.hpp"

#include <cmath>
#include <string>

#include "approxbandit/errors.hpp"

namespace approxbandit {

void ConfidenceParams::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidInput("confidence: nu must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("confidence: lambda must be > 0");
  if (!(s_bound > 0.0) || !std::isfinite(s_bound)) throw InvalidInput("confidence: s_bound must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("confidence: delta must lie in (0, 1)");
}

double beta(const ConfidenceParams& params, std::uint64_t step, std::size_t dim) {
  params.validate();
  if (dim == 0) throw InvalidInput("beta: dim must be positive");
  const double t = static_cast<double>(step);
  const double d = static_cast<double>(dim);
  // log((lambda + t)^{d/2} lambda^{-d/2} / delta), kept in log space.
  const double log_term = 0.5 * d * std::log1p(t / params.lambda) - std::log(params.delta);
  return params.nu * std::sqrt(2.0 * log_term) + std::sqrt(params.lambda) * params.s_bound;
}

void require_finite(const VectorRef& x, const char* what) {
  if (!x.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

RlsState::RlsState(std::size_t dim, double lambda)
    : lambda_(lambda),
      design_(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) * lambda),
      design_inv_(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) / lambda),
      moment_(Vector::Zero(static_cast<Eigen::Index>(dim))),
      estimate_(Vector::Zero(static_cast<Eigen::Index>(dim))) {
  if (dim == 0) throw InvalidInput("RlsState: dim must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("RlsState: lambda must be > 0");
}

void RlsState::update(const VectorRef& arm, double reward) {
  if (arm.size() != moment_.size()) throw InvalidInput("rls_update: arm dimension mismatch");
  require_finite(arm, "rls_update");
  if (!std::isfinite(reward)) throw InvalidInput("rls_update: non-finite reward");

  design_.noalias() += arm * arm.transpose();
  const Vector v = design_inv_ * arm;
  const double denom = 1.0 + arm.dot(v);
  design_inv_.noalias() -= (v * v.transpose()) / denom;
  moment_.noalias() += arm * reward;
  ++step_;

  if (++since_refresh_ >= kRefreshInterval) {
    refresh_inverse();
  } else {
    estimate_.noalias() = design_inv_ * moment_;
  }
}

void RlsState::refresh_inverse() {
  Eigen::LLT<Matrix> llt(design_);
  if (llt.info() != Eigen::Success) throw NumericError("rls: design matrix lost positive definiteness");
  design_inv_ = llt.solve(Matrix::Identity(design_.rows(), design_.cols()));
  design_inv_ = 0.5 * (design_inv_ + design_inv_.transpose()).eval();
  estimate_.noalias() = design_inv_ * moment_;
  since_refresh_ = 0;
}

DiagonalApproxState::DiagonalApproxState(std::size_t dim, double lambda, ApproxMode mode)
    : lambda_(lambda),
      mode_(mode),
      diag_(Vector::Constant(static_cast<Eigen::Index>(dim), lambda)),
      diag_inv_(Vector::Constant(static_cast<Eigen::Index>(dim), 1.0 / lambda)),
      moment_(Vector::Zero(static_cast<Eigen::Index>(dim))) {
  if (dim == 0) throw InvalidInput("DiagonalApproxState: dim must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("DiagonalApproxState: lambda must be > 0");
}

void DiagonalApproxState::update(const VectorRef& arm, double reward) {
  if (arm.size() != diag_.size()) throw InvalidInput("diag_update: arm dimension mismatch");
  require_finite(arm, "diag_update");
  if (!std::isfinite(reward)) throw InvalidInput("diag_update: non-finite reward");
  diag_.array() += arm.array().square();
  diag_inv_ = diag_.cwiseInverse();
  moment_.noalias() += arm * reward;
  ++step_;
}

Vector DiagonalApproxState::diagonal_estimate() const { return diag_inv_.cwiseProduct(moment_); }

double weighted_norm(const Matrix& m, const VectorRef& x) {
  if (m.rows() != x.size() || m.cols() != x.size()) throw InvalidInput("weighted_norm: shape mismatch");
  require_finite(x, "weighted_norm");
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw InvalidInput("weighted_norm: matrix is not positive definite");
  const Vector y = llt.matrixL().solve(x);
  return y.norm();
}

double weighted_norm_diag(const Vector& diag, const VectorRef& x) {
  if (diag.size() != x.size()) throw InvalidInput("weighted_norm: shape mismatch");
  if (!(diag.array() > 0.0).all()) throw InvalidInput("weighted_norm: diagonal must be positive");
  return std::sqrt((x.array().square() / diag.array()).sum());
}

double quadratic_norm(const Matrix& inverse, const VectorRef& x) {
  return std::sqrt(std::max(0.0, x.dot(inverse * x)));
}

double quadratic_norm_diag(const Vector& inverse_diag, const VectorRef& x) {
  return std::sqrt((x.array().square() * inverse_diag.array()).sum());
}

double elliptic_potential(std::span<const Vector> arms, double lambda) {
  if (arms.empty()) return 0.0;
  RlsState state(static_cast<std::size_t>(arms.front().size()), lambda);
  double total = 0.0;
  for (const auto& x : arms) {
    const double w = quadratic_norm(state.design_inv(), x);
    total += w * w;
    state.update(x, 0.0);
  }
  return total;
}

double elliptic_potential_bound(std::size_t dim, std::size_t steps, double lambda) {
  return 2.0 * static_cast<double>(dim) * std::log1p(static_cast<double>(steps) / lambda);
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace approxbandit
