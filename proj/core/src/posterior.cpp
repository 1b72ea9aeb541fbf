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

#include "approxbandit/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "approxbandit/errors.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/normal.hpp"

namespace approxbandit {

GaussianPosterior GaussianPosterior::full(Vector mean, double scale, Matrix cov) {
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) throw InvalidInput("posterior: shape mismatch");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidInput("posterior: scale must be finite and >= 0");
  require_finite(mean, "posterior mean");
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) throw InvalidInput("posterior: covariance is not positive definite");
  Matrix chol = llt.matrixL();
  return GaussianPosterior(std::move(mean), scale, FullShape{std::move(cov), std::move(chol)});
}

GaussianPosterior GaussianPosterior::diagonal(Vector mean, double scale, Vector cov_diag) {
  if (cov_diag.size() != mean.size()) throw InvalidInput("posterior: shape mismatch");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidInput("posterior: scale must be finite and >= 0");
  require_finite(mean, "posterior mean");
  if (!(cov_diag.array() > 0.0).all() || !cov_diag.allFinite())
    throw InvalidInput("posterior: diagonal covariance must be positive");
  Vector root = cov_diag.cwiseSqrt();
  return GaussianPosterior(std::move(mean), scale, DiagonalShape{std::move(cov_diag), std::move(root)});
}

Matrix GaussianPosterior::covariance_shape() const {
  if (const auto* full = std::get_if<FullShape>(&shape_)) return full->cov;
  return std::get<DiagonalShape>(shape_).cov.asDiagonal();
}

Vector GaussianPosterior::sample(Engine& rng) const {
  Vector z(mean_.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard_normal(rng);
  if (const auto* full = std::get_if<FullShape>(&shape_)) {
    const Vector lz = full->chol.triangularView<Eigen::Lower>() * z;
    return mean_ + scale_ * lz;
  }
  return mean_ + scale_ * std::get<DiagonalShape>(shape_).sqrt_cov.cwiseProduct(z);
}

Vector GaussianPosterior::standardize(const VectorRef& theta) const {
  if (!(scale_ > 0.0)) throw InvalidInput("posterior: cannot standardize a degenerate (scale 0) law");
  const Vector centered = (theta - mean_) / scale_;
  if (const auto* full = std::get_if<FullShape>(&shape_)) {
    return full->chol.triangularView<Eigen::Lower>().solve(centered);
  }
  return centered.cwiseQuotient(std::get<DiagonalShape>(shape_).sqrt_cov);
}

double GaussianPosterior::arm_norm(const VectorRef& arm) const {
  if (arm.size() != mean_.size()) throw InvalidInput("posterior: arm dimension mismatch");
  if (const auto* full = std::get_if<FullShape>(&shape_)) {
    // ||L^T x||.
    return (full->chol.transpose() * arm).norm();
  }
  return quadratic_norm_diag(std::get<DiagonalShape>(shape_).cov, arm);
}

double GaussianPosterior::arm_value_quantile(const VectorRef& arm, double gamma) const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("arm_value_quantile: gamma must lie in (0, 1)");
  const double centre = arm.dot(mean_);
  if (gamma == 0.5) return centre;
  return centre + normal_quantile(gamma) * scale_ * arm_norm(arm);
}

Vector StandardNormalShape::draw(Engine& rng) const {
  Vector z(static_cast<Eigen::Index>(dim_));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard_normal(rng);
  return z;
}

AffineShape::AffineShape(std::shared_ptr<const ShapeSampler> inner, Vector shift, double factor)
    : inner_(std::move(inner)), shift_(std::move(shift)), factor_(factor) {
  if (!inner_) throw InvalidInput("AffineShape: null inner sampler");
  if (static_cast<std::size_t>(shift_.size()) != inner_->dim()) throw InvalidInput("AffineShape: shift dimension");
}

Vector AffineShape::draw(Engine& rng) const { return shift_ + factor_ * inner_->draw(rng); }

Vector random_unit_vector(std::size_t dim, Engine& rng) {
  Vector u(static_cast<Eigen::Index>(dim));
  double n = 0.0;
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = standard_normal(rng);
    n = u.norm();
  } while (n == 0.0);
  return u / n;
}

QuantileEstimate empirical_quantile(std::vector<double>& values, double p) {
  if (values.empty()) throw InvalidInput("empirical_quantile: no values");
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("empirical_quantile: p must lie in (0, 1)");
  const auto n = static_cast<double>(values.size());
  const auto last = static_cast<std::ptrdiff_t>(values.size()) - 1;
  auto order_stat = [&](double rank) {
    const auto k = std::clamp(static_cast<std::ptrdiff_t>(std::ceil(rank)) - 1, std::ptrdiff_t{0}, last);
    std::nth_element(values.begin(), values.begin() + k, values.end());
    return values[static_cast<std::size_t>(k)];
  };
  const double band = std::sqrt(n * p * (1.0 - p));
  QuantileEstimate out;
  out.value = order_stat(n * p);
  const double hi = order_stat(n * p + band);
  const double lo = order_stat(n * p - band);
  out.std_error = 0.5 * (hi - lo);
  return out;
}

namespace {

void check_budget(std::size_t directions, std::size_t samples) {
  if (directions == 0) throw InvalidInput("certify: need at least one direction");
  if (samples < kMinCertifySamples) throw InvalidInput("certify: fewer than 1000 samples is too noisy to certify");
}

Matrix draw_directions(std::size_t count, std::size_t dim, Engine& rng) {
  Matrix u(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < count; ++k) u.row(static_cast<Eigen::Index>(k)) = random_unit_vector(dim, rng).transpose();
  return u;
}

}  // namespace

AntiConcentrationEstimate certify_anti_concentration(const ShapeSampler& sampler, std::size_t directions,
                                                     std::size_t samples, Engine& rng) {
  check_budget(directions, samples);
  const Matrix u = draw_directions(directions, sampler.dim(), rng);
  std::vector<std::size_t> hits(directions, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector proj = u * sampler.draw(rng);
    for (std::size_t k = 0; k < directions; ++k)
      if (proj[static_cast<Eigen::Index>(k)] >= 1.0) ++hits[k];
  }
  const auto worst = static_cast<std::size_t>(std::min_element(hits.begin(), hits.end()) - hits.begin());
  AntiConcentrationEstimate out;
  out.samples = samples;
  out.directions = directions;
  out.kappa1_hat = static_cast<double>(hits[worst]) / static_cast<double>(samples);
  out.ci_halfwidth = kZ99 * std::sqrt(out.kappa1_hat * (1.0 - out.kappa1_hat) / static_cast<double>(samples));
  out.worst_direction = u.row(static_cast<Eigen::Index>(worst)).transpose();
  return out;
}

QuantileEstimate certify_concentration_type2(const ShapeSampler& sampler, double delta, std::size_t directions,
                                             std::size_t samples, Engine& rng) {
  check_budget(directions, samples);
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("certify: delta must lie in (0, 1)");
  const Matrix u = draw_directions(directions, sampler.dim(), rng);

  // Directions are processed in blocks; every block replays the same eta
  // stream from a saved engine state so memory stays at block * samples.
  constexpr std::size_t kBlock = 8;
  const Engine start = rng;
  QuantileEstimate best{-std::numeric_limits<double>::infinity(), 0.0};
  std::vector<std::vector<double>> proj(kBlock, std::vector<double>(samples));
  for (std::size_t first = 0; first < directions; first += kBlock) {
    const std::size_t count = std::min(kBlock, directions - first);
    const Matrix block = u.middleRows(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count));
    Engine replay = start;
    for (std::size_t s = 0; s < samples; ++s) {
      const Vector p = block * sampler.draw(replay);
      for (std::size_t k = 0; k < count; ++k) proj[k][s] = p[static_cast<Eigen::Index>(k)];
    }
    if (first + count >= directions) rng = replay;
    for (std::size_t k = 0; k < count; ++k) {
      const auto q = empirical_quantile(proj[k], 1.0 - delta);
      if (q.value > best.value) best = q;
    }
  }
  return best;
}

double type1_radius(std::size_t dim, double c1, double c1p, double delta) {
  const double d = static_cast<double>(dim);
  const double lg = std::log(c1p * d / delta);
  return lg > 0.0 ? std::sqrt(c1 * d * lg) : 0.0;
}

bool type1_feasible(const Type1Report& report, std::size_t dim, double c1, double c1p) {
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    if (report.norm_quantiles[i].value > type1_radius(dim, c1, c1p, report.deltas[i])) return false;
  }
  return true;
}

Type1Report certify_concentration_type1(const ShapeSampler& sampler, const std::vector<double>& delta_grid,
                                        std::size_t samples, Engine& rng) {
  check_budget(1, samples);
  if (delta_grid.empty()) throw InvalidInput("certify: empty delta grid");
  for (const double d : delta_grid)
    if (!(d > 0.0 && d < 1.0)) throw InvalidInput("certify: delta must lie in (0, 1)");

  std::vector<double> norms(samples);
  for (auto& n : norms) n = sampler.draw(rng).norm();

  Type1Report report;
  report.deltas = delta_grid;
  for (const double d : delta_grid) report.norm_quantiles.push_back(empirical_quantile(norms, 1.0 - d));

  static constexpr double kC1[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  static constexpr double kC1p[] = {1.0, 2.0, 4.0, 8.0, 16.0};
  for (const double c1 : kC1) {
    for (const double c1p : kC1p) {
      if (type1_feasible(report, sampler.dim(), c1, c1p)) {
        report.feasible = true;
        report.c1 = c1;
        report.c1p = c1p;
        return report;
      }
    }
  }
  return report;
}

WellBehavedCertificate certify_well_behaved(const ShapeSampler& sampler, const CertifyOptions& options,
                                            Engine& rng) {
  WellBehavedCertificate cert;
  cert.samples = options.samples;
  cert.anti_concentration = certify_anti_concentration(sampler, options.directions, options.samples, rng);
  cert.ci_halfwidth = cert.anti_concentration.ci_halfwidth;
  cert.type1 = certify_concentration_type1(sampler, options.delta_grid, options.samples, rng);
  for (const double d : options.delta_grid)
    cert.c_hat1.emplace_back(d, certify_concentration_type2(sampler, d, options.directions, options.samples, rng));
  cert.caveat = "anti-concentration and type-II constants are minima/maxima over " +
                std::to_string(options.directions) +
                " sampled directions; exact only for rotation-invariant laws";
  return cert;
}

}  // namespace approxbandit
