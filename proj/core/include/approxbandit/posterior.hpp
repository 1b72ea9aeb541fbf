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
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "approxbandit/rng.hpp"
#include "approxbandit/types.hpp"

namespace approxbandit {

/// Gaussian law N(mean, scale^2 * C) over theta, where C is either a dense
/// SPD matrix (V^{-1}) or a positive diagonal (D^{-1}). The square-root
/// factor of C is computed once at construction.
class GaussianPosterior {
 public:
  /// Throws InvalidInput if cov is not SPD or shapes disagree, or scale < 0.
  static GaussianPosterior full(Vector mean, double scale, Matrix cov);
  static GaussianPosterior diagonal(Vector mean, double scale, Vector cov_diag);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  const Vector& mean() const noexcept { return mean_; }
  double scale() const noexcept { return scale_; }
  bool is_diagonal() const noexcept { return std::holds_alternative<DiagonalShape>(shape_); }

  /// Dense covariance shape C (materialized for the diagonal case).
  Matrix covariance_shape() const;

  /// mean + scale * L z with L L^T = C and z standard normal.
  Vector sample(Engine& rng) const;

  /// scale^{-1} L^{-1} (theta - mean); standard normal when theta ~ this law.
  Vector standardize(const VectorRef& theta) const;

  /// sqrt(arm^T C arm).
  double arm_norm(const VectorRef& arm) const;

  /// arm^T mean + Phi^{-1}(gamma) * scale * ||arm||_C. Closed form.
  /// Throws InvalidInput unless gamma in (0, 1).
  double arm_value_quantile(const VectorRef& arm, double gamma) const;

 private:
  struct FullShape {
    Matrix cov;
    Matrix chol;  // lower factor
  };
  struct DiagonalShape {
    Vector cov;
    Vector sqrt_cov;
  };

  GaussianPosterior(Vector mean, double scale, std::variant<FullShape, DiagonalShape> shape)
      : mean_(std::move(mean)), scale_(scale), shape_(std::move(shape)) {}

  Vector mean_;
  double scale_;
  std::variant<FullShape, DiagonalShape> shape_;
};

/// Draws the standardized variable eta of a posterior family.
class ShapeSampler {
 public:
  virtual ~ShapeSampler() = default;
  virtual std::size_t dim() const = 0;
  virtual Vector draw(Engine& rng) const = 0;
};

class StandardNormalShape final : public ShapeSampler {
 public:
  explicit StandardNormalShape(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const override { return dim_; }
  Vector draw(Engine& rng) const override;

 private:
  std::size_t dim_;
};

/// shift + factor * eta_inner.
class AffineShape final : public ShapeSampler {
 public:
  AffineShape(std::shared_ptr<const ShapeSampler> inner, Vector shift, double factor);
  std::size_t dim() const override { return inner_->dim(); }
  Vector draw(Engine& rng) const override;

 private:
  std::shared_ptr<const ShapeSampler> inner_;
  Vector shift_;
  double factor_;
};

/// Standardizes draws from a posterior: eta = scale^{-1} L^{-1}(theta - mean).
class StandardizedPosteriorShape final : public ShapeSampler {
 public:
  explicit StandardizedPosteriorShape(GaussianPosterior posterior) : posterior_(std::move(posterior)) {}
  std::size_t dim() const override { return posterior_.dim(); }
  Vector draw(Engine& rng) const override { return posterior_.standardize(posterior_.sample(rng)); }

 private:
  GaussianPosterior posterior_;
};

/// Monte-Carlo estimate of the anti-concentration constant
/// min_u P(u^T eta >= 1) over sampled unit directions.
struct AntiConcentrationEstimate {
  double kappa1_hat = 0.0;
  double ci_halfwidth = 0.0;  // 99% binomial, at the minimizing direction
  std::size_t samples = 0;
  std::size_t directions = 0;
  Vector worst_direction;
};

struct QuantileEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Type-I concentration: (1 - delta)-quantiles of ||eta|| against
/// sqrt(c1 d log(c1' d / delta)).
struct Type1Report {
  std::vector<double> deltas;
  std::vector<QuantileEstimate> norm_quantiles;
  bool feasible = false;
  double c1 = 0.0;
  double c1p = 0.0;
};

struct WellBehavedCertificate {
  AntiConcentrationEstimate anti_concentration;
  Type1Report type1;
  std::vector<std::pair<double, QuantileEstimate>> c_hat1;
  std::size_t samples = 0;
  double ci_halfwidth = 0.0;
  /// Finite directions certify only a sampled minimum; exact only for
  /// rotation-invariant laws.
  std::string caveat;
};

struct CertifyOptions {
  std::size_t directions = 64;
  std::size_t samples = 200000;
  std::vector<double> delta_grid = {0.2, 0.1, 0.05, 0.01};
};

inline constexpr std::size_t kMinCertifySamples = 1000;

/// Two-sided 99% normal critical value used for binomial intervals.
inline constexpr double kZ99 = 2.5758293035489004;

AntiConcentrationEstimate certify_anti_concentration(const ShapeSampler& sampler, std::size_t directions,
                                                     std::size_t samples, Engine& rng);

/// max over sampled directions u of the empirical (1 - delta)-quantile of
/// u^T eta: an estimate of c_hat1(delta).
QuantileEstimate certify_concentration_type2(const ShapeSampler& sampler, double delta, std::size_t directions,
                                             std::size_t samples, Engine& rng);

/// Smallest feasible (c1, c1') on the coarse candidate grid, or infeasible.
Type1Report certify_concentration_type1(const ShapeSampler& sampler, const std::vector<double>& delta_grid,
                                        std::size_t samples, Engine& rng);

/// Checks a single candidate pair against the quantiles in `report`.
bool type1_feasible(const Type1Report& report, std::size_t dim, double c1, double c1p);

/// sqrt(c1 d log(c1' d / delta)); 0 when the log is not positive.
double type1_radius(std::size_t dim, double c1, double c1p, double delta);

WellBehavedCertificate certify_well_behaved(const ShapeSampler& sampler, const CertifyOptions& options,
                                            Engine& rng);

/// Empirical p-quantile with an order-statistic standard error. Reorders
/// `values`.
QuantileEstimate empirical_quantile(std::vector<double>& values, double p);

/// Uniformly random unit vector.
Vector random_unit_vector(std::size_t dim, Engine& rng);

}  // namespace approxbandit
