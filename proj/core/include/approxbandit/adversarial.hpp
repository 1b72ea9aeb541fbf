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
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "approxbandit/environment.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/policy.hpp"
#include "approxbandit/posterior.hpp"
#include "approxbandit/rng.hpp"

namespace approxbandit {

enum class Construction { TsRegionReweight, BucbConditionalReweight };

/// Smallest budget for which the conditional-reweight adversary exists:
/// (gamma^{1-alpha} - 1) / (alpha (alpha - 1)), or -log(gamma) at alpha = 1.
double bucb_epsilon_threshold(double alpha, double gamma);

/// Midpoint of the feasible reweighting interval (lower, upper), where upper
/// is (eps alpha (alpha - 1) + 1)^{1/(alpha - 1)} (e^eps at alpha = 1, +inf
/// when the base is not positive) and lower is 1, or 1/gamma when gamma is
/// given. An unbounded interval returns `cap`. Throws InvalidInput when the
/// interval is empty, naming the budget threshold.
double choose_r(double alpha, double epsilon, std::optional<double> gamma = std::nullopt, double cap = 2.0);

/// The exact two-dimensional posterior Pi and its single-divergence
/// reweighting Q on the arm set {(1, 0), (0, 1)}.
///
/// TsRegionReweight: q = pi (1 - (1 - F)/r)/F on {x1 < x2} and pi/r on
/// {x1 >= x2}, with F = P_Pi(x1 < x2).
/// BucbConditionalReweight: with b the gamma-quantile of the x1 marginal and
/// F(x1) = P_Pi(x2 <= b | x1), q = pi/r on {x2 < b} and
/// pi (1 - F/r)/(1 - F) on {x2 >= b}; the x1 marginal is unchanged.
class AdversarialPosteriorPair {
 public:
  static AdversarialPosteriorPair ts_region(GaussianPosterior pi, double r);
  static AdversarialPosteriorPair bucb_conditional(GaussianPosterior pi, double r, double gamma);

  Construction construction() const noexcept { return construction_; }
  const GaussianPosterior& pi() const noexcept { return pi_; }
  double r() const noexcept { return r_; }
  double gamma() const noexcept { return gamma_; }
  /// P_Pi(x1 < x2).
  double f_t() const noexcept { return f_t_; }
  /// gamma-quantile of the x1 marginal (BucbConditionalReweight only).
  double b_t() const noexcept { return b_t_; }
  /// Mean and covariance of Pi (covariance includes the scale).
  const Vector& mean() const noexcept { return mean_; }
  const Matrix& cov() const noexcept { return cov_; }

  double pi_density(double x1, double x2) const;
  double q_density(double x1, double x2) const;
  /// Weight q/pi at a point.
  double weight(double x1, double x2) const;
  double log_weight(double x1, double x2) const;

 private:
  AdversarialPosteriorPair(GaussianPosterior pi, Construction construction, double r, double gamma);

  /// Mean and sd of x2 given x1.
  std::pair<double, double> conditional(double x1) const;

  GaussianPosterior pi_;
  Construction construction_;
  double r_;
  double gamma_;
  Vector mean_;
  Matrix cov_;
  double f_t_ = 0.0;
  double b_t_ = 0.0;
};

/// Cap on rejection proposals per draw.
inline constexpr std::size_t kMaxRejections = 1'000'000;

/// Draw from Q of a TsRegionReweight pair. The region is sampled by rejection
/// against Pi while F lies in (1e-6, 1 - 1e-6); beyond that band by exact
/// conditioning on x1 - x2 drawn from its truncated law.
Vector ts_adversary_sample(const AdversarialPosteriorPair& pair, Engine& rng);

/// gamma-quantiles of the arm values under Q for arms (1, 0) and (0, 1). The
/// first is b_t; the second solves P_Q(x2 <= x) = gamma by root-finding over a
/// quadrature of the reweighted x2 marginal.
std::pair<double, double> bucb_adversary_quantiles(const AdversarialPosteriorPair& pair, double gamma);

/// P_Q(x2 <= x) for a BucbConditionalReweight pair.
double bucb_q_cdf_x2(const AdversarialPosteriorPair& pair, double x);

struct BudgetCertificate {
  double divergence = 0.0;     // quadrature D_alpha(Pi, Q)
  double error = 0.0;          // quadrature error estimate
  double analytic_bound = 0.0; // (r^{alpha-1} - 1)/(alpha (alpha - 1)), log r at alpha = 1
  /// Nested two-dimensional checks; NaN when not run.
  double normalization_error = std::numeric_limits<double>::quiet_NaN();
  double marginal_error = std::numeric_limits<double>::quiet_NaN();
};

/// Certified D_alpha(Pi, Q) by one-dimensional quadrature. With `nested`,
/// also integrates q over the plane and, for the conditional construction,
/// compares the x1 marginal of Q with that of Pi at a few points.
BudgetCertificate certify_budget(const AdversarialPosteriorPair& pair, double alpha, bool nested = false);

struct AdversarialOptions {
  PolicyKind policy = PolicyKind::LinTS;
  double mu1 = 1.0;
  double mu2 = 0.0;
  double alpha = 2.0;
  double epsilon = 0.1;
  std::size_t horizon = 2000;
  double gamma = 0.9;  // LinBUCB quantile level
  /// Overrides choose_r; 1 gives the unperturbed control.
  std::optional<double> r_override;
  double noise_sd = 0.5;
  double delta = 0.05;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  /// Nested two-dimensional checks every this many steps (0 disables).
  std::size_t nested_check_every = 100;
};

struct AdversarialEpisode {
  RegretTrace trace;
  double r = 1.0;
  std::vector<std::size_t> chosen;
  std::vector<double> certified;  // per-step D_alpha(Pi_t, Q_t)
  std::vector<double> f_t;
  std::vector<double> b_t;
  double max_divergence = 0.0;
  double max_bound_violation = -std::numeric_limits<double>::infinity();  // divergence - analytic bound
  double max_normalization_error = 0.0;
  double max_marginal_error = 0.0;
  bool budget_held = true;
};

/// Runs one policy against the adversarial posteriors on theta* = (mu1, mu2)
/// with the fixed arm set {(1, 0), (0, 1)}.
AdversarialEpisode run_adversarial_episode(const AdversarialOptions& options);

}  // namespace approxbandit
