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

#include "approxbandit/policy.hpp"

#include <cmath>

#include <fmt/format.h>

#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"

namespace approxbandit {

std::string_view to_string(PolicyKind kind) { return kind == PolicyKind::LinTS ? "lints" : "linbucb"; }

std::string_view to_string(Inference inference) { return inference == Inference::Exact ? "exact" : "approx"; }

std::string_view to_string(ApproxMode mode) { return mode == ApproxMode::CovOnly ? "cov" : "mean-and-cov"; }

std::vector<std::string> PolicyConfig::validate() const {
  confidence.validate();
  if (horizon == 0) throw InvalidInput("policy: horizon must be positive");
  if (posterior_scale && !(*posterior_scale >= 0.0 && std::isfinite(*posterior_scale)))
    throw InvalidInput("policy: posterior scale must be finite and >= 0");
  std::vector<std::string> warnings;
  if (kind == PolicyKind::LinBUCB) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput(fmt::format("policy: gamma must lie in (0, 1), got {}", gamma));
    const double kappa1 = normal_sf(1.0);
    if (inference == Inference::Exact && gamma < 1.0 - kappa1) {
      warnings.push_back(fmt::format(
          "gamma = {} is below 1 - kappa1 = {:.4f} of the Gaussian posterior; the regret bound is stated for larger "
          "gamma, though any constant quantile level can be run",
          gamma, 1.0 - kappa1));
    } else if (inference == Inference::Approximate) {
      warnings.push_back(fmt::format(
          "kappa2 of the approximate posterior is unknown; gamma = {} is accepted as a constant quantile level",
          gamma));
    }
  }
  return warnings;
}

std::size_t argmax(std::span<const double> scores) {
  if (scores.empty()) throw InvalidInput("argmax: empty score set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

Policy::Policy(PolicyConfig config, std::size_t dim) : config_(std::move(config)), dim_(dim) {
  if (dim == 0) throw InvalidInput("policy: dimension must be positive");
  config_.validate();
  if (config_.kind == PolicyKind::LinBUCB && config_.gamma != 0.5) z_gamma_ = normal_quantile(config_.gamma);
  const double lambda = config_.confidence.lambda;
  if (config_.inference == Inference::Approximate) diag_.emplace(dim, lambda, config_.approx_mode);
  if (config_.inference == Inference::Exact || config_.approx_mode == ApproxMode::CovOnly) rls_.emplace(dim, lambda);
}

double Policy::scale() const {
  if (config_.posterior_scale) return *config_.posterior_scale;
  ConfidenceParams params = config_.confidence;
  if (config_.kind == PolicyKind::LinTS) params.delta /= 4.0 * static_cast<double>(config_.horizon);
  return beta(params, step_, dim_);
}

Vector Policy::posterior_mean() const {
  if (config_.inference == Inference::Approximate && config_.approx_mode == ApproxMode::MeanAndCov)
    return diag_->diagonal_estimate();
  return rls_->estimate();
}

GaussianPosterior Policy::posterior() const {
  if (config_.inference == Inference::Exact)
    return GaussianPosterior::full(rls_->estimate(), scale(), rls_->design_inv());
  return GaussianPosterior::diagonal(posterior_mean(), scale(), diag_->diag_inv());
}

std::size_t Policy::select_arm(const ArmSet& arms, Engine& rng) {
  if (arms.empty()) throw InvalidInput("select_arm: empty arm set");
  for (const auto& arm : arms) {
    if (static_cast<std::size_t>(arm.size()) != dim_) throw InvalidInput("select_arm: arm dimension mismatch");
  }
  scores_.resize(arms.size());
  if (config_.kind == PolicyKind::LinTS) {
    const Vector theta = posterior().sample(rng);
    for (std::size_t i = 0; i < arms.size(); ++i) scores_[i] = arms[i].dot(theta);
  } else {
    const Vector mean = posterior_mean();
    const double width = z_gamma_ * scale();
    const bool exact = config_.inference == Inference::Exact;
    for (std::size_t i = 0; i < arms.size(); ++i) {
      const double norm = exact ? quadratic_norm(rls_->design_inv(), arms[i]) : quadratic_norm_diag(diag_->diag_inv(), arms[i]);
      scores_[i] = arms[i].dot(mean) + width * norm;
    }
  }
  return argmax(scores_);
}

void Policy::update(const VectorRef& arm, double reward) {
  if (rls_) rls_->update(arm, reward);
  if (diag_) diag_->update(arm, reward);
  ++step_;
}

}  // namespace approxbandit
