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
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "approxbandit/rng.hpp"
#include "approxbandit/types.hpp"

namespace approxbandit {

/// Multivariate Gaussian N(mean, cov); one-dimensional when mean.size() == 1.
struct GaussianDist {
  Vector mean;
  Matrix cov;

  static GaussianDist univariate(double mean, double sd);
  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
};

/// One-dimensional Gaussian N(mean, sd^2) whose density is multiplied by
/// weights[k] on the k-th interval cut by the sorted `breaks`
/// (weights.size() == breaks.size() + 1). The weights must renormalize the
/// law; `normalization_error` reports how far they are from doing so.
struct PiecewiseGaussian1D {
  double mean = 0.0;
  double sd = 1.0;
  std::vector<double> breaks;
  std::vector<double> weights;

  double log_density(double x) const;
  double cdf(double x) const;
  double normalization_error() const;
};

/// A law known only through a log-density and a sampler. The mean/covariance
/// hints locate the mass for quadrature ranges and Monte-Carlo proposals.
struct BlackBoxDist {
  std::size_t dim = 1;
  std::function<double(const VectorRef&)> log_density;
  std::function<Vector(Engine&)> sample;
  Vector mean_hint;
  Matrix cov_hint;
};

using Distribution = std::variant<GaussianDist, PiecewiseGaussian1D, BlackBoxDist>;

std::size_t dim_of(const Distribution& dist);
double log_density(const Distribution& dist, const VectorRef& x);

enum class DivergenceMethod { Auto, ClosedFormGaussian, Quadrature1D, MonteCarlo };

std::string_view to_string(DivergenceMethod method);

/// D_alpha(P1, P2) = (int p1^alpha p2^(1-alpha) - 1) / (alpha (alpha - 1)),
/// with D_1 = KL(P1 || P2) and D_0 = KL(P2 || P1).
struct DivergenceResult {
  double alpha = 0.0;
  double value = 0.0;
  DivergenceMethod method = DivergenceMethod::ClosedFormGaussian;
  double error_estimate = 0.0;
  /// The defining integral diverges (e.g. the alpha-blended precision is not
  /// positive definite); value is +inf.
  bool infinite = false;
};

struct DivergenceOptions {
  double tolerance = 1e-10;
  std::size_t mc_samples = 200000;
  std::uint64_t mc_seed = 0x5EED;
};

/// Dispatches on `method`; Auto picks closed form for Gaussian pairs, then
/// quadrature for one-dimensional pairs, then Monte Carlo.
/// Throws InvalidInput when the requested method does not apply to the pair.
DivergenceResult alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                  DivergenceMethod method = DivergenceMethod::Auto,
                                  const DivergenceOptions& options = {});

DivergenceResult gaussian_alpha_divergence(const GaussianDist& p1, const GaussianDist& p2, double alpha);
DivergenceResult quadrature_alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                             double tolerance);
DivergenceResult monte_carlo_alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                              std::size_t samples, Engine& rng);

/// Smallest eigenvalue of 2 alpha P1 + 2 (1 - alpha) P2 - Pg, where P are the
/// precisions of p1, p2 and of the Monte-Carlo proposal. The importance
/// weights of monte_carlo_alpha_divergence have finite variance iff this is
/// positive.
double importance_variance_margin(const GaussianDist& p1, const GaussianDist& p2, double alpha);

/// Law of a + B X for X ~ dist.
GaussianDist affine_transform(const GaussianDist& dist, const VectorRef& shift, const Matrix& linear);

/// Law of u^T X.
GaussianDist project(const GaussianDist& dist, const VectorRef& direction);

}  // namespace approxbandit
