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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "approxbandit/bounds.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/posterior.hpp"
#include "approxbandit/rng.hpp"

namespace approxbandit {

enum class PolicyKind { LinTS, LinBUCB };

std::string_view to_string(PolicyKind kind);
std::string_view to_string(Inference inference);
std::string_view to_string(ApproxMode mode);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::LinBUCB;
  Inference inference = Inference::Exact;
  double gamma = 0.6;  // LinBUCB only
  ConfidenceParams confidence;
  std::size_t horizon = 1000;
  ApproxMode approx_mode = ApproxMode::CovOnly;
  /// Fixed posterior scale; unset means the theory radius beta_t(delta') for
  /// LinTS (delta' = delta / (4T)) and beta_t(delta) for LinBUCB.
  std::optional<double> posterior_scale;
  std::string name;

  /// Throws InvalidInput on an unusable configuration. Returns warnings for
  /// settings outside the regret bounds' preconditions.
  std::vector<std::string> validate() const;
};

/// Index of the largest score; ties go to the lowest index. Throws
/// InvalidInput on an empty span.
std::size_t argmax(std::span<const double> scores);

/// LinTS or LinBUCB over a finite arm set, with exact (V^{-1}) or diagonal
/// (D^{-1}) posterior covariance.
class Policy {
 public:
  Policy(PolicyConfig config, std::size_t dim);

  /// Throws InvalidInput on an empty arm set or mismatched dimension.
  std::size_t select_arm(const ArmSet& arms, Engine& rng);
  void update(const VectorRef& arm, double reward);

  /// Posterior the next selection would use.
  GaussianPosterior posterior() const;
  Vector posterior_mean() const;
  double scale() const;
  std::uint64_t step() const noexcept { return step_; }
  std::size_t dim() const noexcept { return dim_; }
  const PolicyConfig& config() const noexcept { return config_; }
  /// Exact state; empty for approximate policies in MeanAndCov mode.
  const std::optional<RlsState>& rls() const noexcept { return rls_; }
  const std::optional<DiagonalApproxState>& diagonal() const noexcept { return diag_; }

 private:
  PolicyConfig config_;
  std::size_t dim_;
  std::uint64_t step_ = 0;
  double z_gamma_ = 0.0;
  std::optional<RlsState> rls_;
  std::optional<DiagonalApproxState> diag_;
  std::vector<double> scores_;
};

}  // namespace approxbandit
