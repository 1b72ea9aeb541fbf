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

#include "approxbandit/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"
#include "approxbandit/quadrature.hpp"

namespace approxbandit {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356;
constexpr double kTruncationSds = 12.0;

using LogDensityFn = std::function<double(const VectorRef&)>;

bool is_kl_order(double alpha, double target) { return alpha == target; }

struct GaussianFactor {
  Vector mean;
  Eigen::LLT<Matrix> llt;
  double log_norm = 0.0;  // -0.5 (d log 2pi + log det)
};

GaussianFactor factor(const GaussianDist& g) {
  GaussianFactor f{g.mean, Eigen::LLT<Matrix>(g.cov), 0.0};
  if (f.llt.info() != Eigen::Success) throw InvalidInput("gaussian: covariance is not positive definite");
  const double log_det = 2.0 * f.llt.matrixLLT().diagonal().array().log().sum();
  f.log_norm = -0.5 * (static_cast<double>(g.dim()) * kLog2Pi + log_det);
  return f;
}

LogDensityFn make_log_density(const Distribution& dist) {
  if (const auto* g = std::get_if<GaussianDist>(&dist)) {
    auto f = std::make_shared<GaussianFactor>(factor(*g));
    return [f](const VectorRef& x) {
      const Vector y = f->llt.matrixL().solve(x - f->mean);
      return f->log_norm - 0.5 * y.squaredNorm();
    };
  }
  if (const auto* p = std::get_if<PiecewiseGaussian1D>(&dist)) {
    return [p = *p](const VectorRef& x) { return p.log_density(x[0]); };
  }
  const auto& b = std::get<BlackBoxDist>(dist);
  if (!b.log_density) throw InvalidInput("black-box distribution has no log density");
  return b.log_density;
}

struct Moments {
  Vector mean;
  Matrix cov;
};

Moments moments_hint(const Distribution& dist) {
  if (const auto* g = std::get_if<GaussianDist>(&dist)) return {g->mean, g->cov};
  if (const auto* p = std::get_if<PiecewiseGaussian1D>(&dist)) {
    Moments m{Vector::Constant(1, p->mean), Matrix::Constant(1, 1, p->sd * p->sd)};
    return m;
  }
  const auto& b = std::get<BlackBoxDist>(dist);
  if (b.mean_hint.size() != static_cast<Eigen::Index>(b.dim) || b.cov_hint.rows() != static_cast<Eigen::Index>(b.dim))
    throw InvalidInput("black-box distribution needs mean/covariance hints");
  return {b.mean_hint, b.cov_hint};
}

std::vector<double> breaks_of(const Distribution& dist) {
  if (const auto* p = std::get_if<PiecewiseGaussian1D>(&dist)) return p->breaks;
  return {};
}

// Importance proposal for the integrand p1^a p2^(1-a): the tilted Gaussian
// with precision a P1 + (1 - a) P2 when that is positive definite, with its
// covariance doubled; otherwise a law wider than both inputs.
GaussianDist proposal_for(const Vector& mean1, const Matrix& cov1, const Vector& mean2, const Matrix& cov2,
                          double alpha) {
  const Matrix prec1 = cov1.inverse();
  const Matrix prec2 = cov2.inverse();
  const Matrix tilted = alpha * prec1 + (1.0 - alpha) * prec2;
  Eigen::LLT<Matrix> llt(tilted);
  if (llt.info() == Eigen::Success && (llt.matrixLLT().diagonal().array() > 0.0).all()) {
    const Matrix cov = llt.solve(Matrix::Identity(tilted.rows(), tilted.cols()));
    const Vector mean = llt.solve(alpha * prec1 * mean1 + (1.0 - alpha) * prec2 * mean2);
    Matrix widened = 2.0 * cov;
    widened = 0.5 * (widened + widened.transpose()).eval();
    return {mean, widened};
  }
  const Vector diff = mean1 - mean2;
  return {0.5 * (mean1 + mean2), 2.0 * (cov1 + cov2) + 0.25 * diff * diff.transpose()};
}

void check_pair(const Distribution& p1, const Distribution& p2, double alpha) {
  if (!std::isfinite(alpha)) throw InvalidInput("alpha_divergence: alpha must be finite");
  if (dim_of(p1) != dim_of(p2)) throw InvalidInput("alpha_divergence: dimension mismatch");
}

DivergenceResult finish(double alpha, double integral, double integral_error, DivergenceMethod method) {
  DivergenceResult r;
  r.alpha = alpha;
  r.method = method;
  const double denom = alpha * (alpha - 1.0);
  r.value = (integral - 1.0) / denom;
  r.error_estimate = integral_error / std::abs(denom);
  if (!std::isfinite(r.value)) {
    r.value = std::numeric_limits<double>::infinity();
    r.infinite = true;
  }
  return r;
}

}  // namespace

GaussianDist GaussianDist::univariate(double mean, double sd) {
  if (!(sd > 0.0)) throw InvalidInput("GaussianDist: sd must be positive");
  return {Vector::Constant(1, mean), Matrix::Constant(1, 1, sd * sd)};
}

double PiecewiseGaussian1D::log_density(double x) const {
  const auto k = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  return std::log(weights[k]) + normal_log_pdf((x - mean) / sd) - std::log(sd);
}

double PiecewiseGaussian1D::cdf(double x) const {
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double edge = k < breaks.size() ? std::min(breaks[k], x) : x;
    const double next = normal_cdf((edge - mean) / sd);
    if (next > prev) total += weights[k] * (next - prev);
    if (k >= breaks.size() || x <= breaks[k]) break;
    prev = next;
  }
  return total;
}

double PiecewiseGaussian1D::normalization_error() const {
  if (weights.size() != breaks.size() + 1) throw InvalidInput("PiecewiseGaussian1D: weights/breaks mismatch");
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double next = k < breaks.size() ? normal_cdf((breaks[k] - mean) / sd) : 1.0;
    total += weights[k] * (next - prev);
    prev = next;
  }
  return total - 1.0;
}

std::size_t dim_of(const Distribution& dist) {
  if (const auto* g = std::get_if<GaussianDist>(&dist)) return g->dim();
  if (std::holds_alternative<PiecewiseGaussian1D>(dist)) return 1;
  return std::get<BlackBoxDist>(dist).dim;
}

double log_density(const Distribution& dist, const VectorRef& x) { return make_log_density(dist)(x); }

std::string_view to_string(DivergenceMethod method) {
  switch (method) {
    case DivergenceMethod::Auto: return "auto";
    case DivergenceMethod::ClosedFormGaussian: return "closed-form";
    case DivergenceMethod::Quadrature1D: return "quadrature";
    case DivergenceMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

DivergenceResult gaussian_alpha_divergence(const GaussianDist& p1, const GaussianDist& p2, double alpha) {
  check_pair(p1, p2, alpha);
  const auto f1 = factor(p1);
  const auto f2 = factor(p2);
  const Vector delta = p1.mean - p2.mean;
  const double log_det1 = 2.0 * f1.llt.matrixLLT().diagonal().array().log().sum();
  const double log_det2 = 2.0 * f2.llt.matrixLLT().diagonal().array().log().sum();
  const auto d = static_cast<double>(p1.dim());

  DivergenceResult r;
  r.alpha = alpha;
  r.method = DivergenceMethod::ClosedFormGaussian;
  if (is_kl_order(alpha, 1.0) || is_kl_order(alpha, 0.0)) {
    // KL(A || B) = 0.5 (tr(B^-1 A) + D^T B^-1 D - d + log|B| - log|A|).
    const bool forward = alpha == 1.0;
    const auto& a = forward ? p1 : p2;
    const auto& fb = forward ? f2 : f1;
    const double log_det_a = forward ? log_det1 : log_det2;
    const double log_det_b = forward ? log_det2 : log_det1;
    const double trace = fb.llt.solve(a.cov).trace();
    const double maha = delta.dot(fb.llt.solve(delta));
    r.value = 0.5 * (trace + maha - d + log_det_b - log_det_a);
  } else {
    // int p1^a p2^(1-a) = |S|^(-1/2) |C1|^((1-a)/2) |C2|^(a/2) exp(-a(1-a)/2 D^T S^-1 D),
    // S = a C2 + (1 - a) C1; finite iff S is positive definite.
    const Matrix blend = alpha * p2.cov + (1.0 - alpha) * p1.cov;
    Eigen::LLT<Matrix> llt(blend);
    if (llt.info() != Eigen::Success || (llt.matrixLLT().diagonal().array() <= 0.0).any()) {
      r.value = std::numeric_limits<double>::infinity();
      r.infinite = true;
      return r;
    }
    const double log_det_s = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double maha = delta.dot(llt.solve(delta));
    const double log_integral = -0.5 * alpha * (1.0 - alpha) * maha - 0.5 * log_det_s +
                                0.5 * (1.0 - alpha) * log_det1 + 0.5 * alpha * log_det2;
    r.value = std::expm1(log_integral) / (alpha * (alpha - 1.0));
    if (!std::isfinite(r.value)) {
      r.value = std::numeric_limits<double>::infinity();
      r.infinite = true;
      return r;
    }
  }
  r.value = std::max(r.value, 0.0);
  r.error_estimate = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(r.value));
  return r;
}

DivergenceResult quadrature_alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                             double tolerance) {
  check_pair(p1, p2, alpha);
  if (dim_of(p1) != 1) throw InvalidInput("quadrature divergence: one-dimensional laws only");
  const auto l1 = make_log_density(p1);
  const auto l2 = make_log_density(p2);
  const auto m1 = moments_hint(p1);
  const auto m2 = moments_hint(p2);
  const double s1 = std::sqrt(m1.cov(0, 0));
  const double s2 = std::sqrt(m2.cov(0, 0));
  const double lo = std::min(m1.mean[0] - kTruncationSds * s1, m2.mean[0] - kTruncationSds * s2);
  const double hi = std::max(m1.mean[0] + kTruncationSds * s1, m2.mean[0] + kTruncationSds * s2);
  auto breaks = breaks_of(p1);
  const auto b2 = breaks_of(p2);
  breaks.insert(breaks.end(), b2.begin(), b2.end());
  const double piece = std::min(s1, s2);

  Vector x(1);
  std::function<double(double)> integrand;
  if (is_kl_order(alpha, 1.0) || is_kl_order(alpha, 0.0)) {
    const bool forward = alpha == 1.0;
    integrand = [&, forward](double t) {
      x[0] = t;
      const double a = forward ? l1(x) : l2(x);
      const double b = forward ? l2(x) : l1(x);
      const double pa = std::exp(a);
      return pa == 0.0 ? 0.0 : pa * (a - b);
    };
    const auto kl = integrate_real_line(integrand, lo, hi, breaks, piece, tolerance);
    DivergenceResult r;
    r.alpha = alpha;
    r.method = DivergenceMethod::Quadrature1D;
    r.value = kl.value;
    r.error_estimate = kl.error;
    return r;
  }
  integrand = [&](double t) {
    x[0] = t;
    return std::exp(alpha * l1(x) + (1.0 - alpha) * l2(x));
  };
  IntegralResult integral;
  try {
    integral = integrate_real_line(integrand, lo, hi, breaks, piece, tolerance);
  } catch (const NumericError&) {
    DivergenceResult r;
    r.alpha = alpha;
    r.method = DivergenceMethod::Quadrature1D;
    r.value = std::numeric_limits<double>::infinity();
    r.infinite = true;
    return r;
  }
  return finish(alpha, integral.value, integral.error, DivergenceMethod::Quadrature1D);
}

DivergenceResult monte_carlo_alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                              std::size_t samples, Engine& rng) {
  check_pair(p1, p2, alpha);
  if (samples < 2) throw InvalidInput("monte-carlo divergence: need at least two samples");
  const auto l1 = make_log_density(p1);
  const auto l2 = make_log_density(p2);
  const auto m1 = moments_hint(p1);
  const auto m2 = moments_hint(p2);
  const auto dim = static_cast<Eigen::Index>(dim_of(p1));

  const auto proposal = proposal_for(m1.mean, m1.cov, m2.mean, m2.cov, alpha);
  const auto pf = factor(proposal);
  const Matrix chol = pf.llt.matrixL().toDenseMatrix();

  // Latin-hypercube strata in standardized coordinates (plain stratification
  // when dim == 1).
  const auto n = static_cast<std::ptrdiff_t>(samples);
  std::vector<std::vector<std::ptrdiff_t>> perm(static_cast<std::size_t>(dim));
  for (auto& p : perm) {
    p.resize(samples);
    std::iota(p.begin(), p.end(), 0);
    if (dim > 1) std::shuffle(p.begin(), p.end(), rng);
  }

  const bool kl_forward = is_kl_order(alpha, 1.0);
  const bool kl_reverse = is_kl_order(alpha, 0.0);
  double mean = 0.0;
  double m2acc = 0.0;
  Vector z(dim);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double u = (static_cast<double>(perm[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) +
                        uniform01(rng)) / static_cast<double>(n);
      z[j] = normal_quantile(std::clamp(u, 1e-300, 1.0 - 1e-16));
    }
    const Vector x = proposal.mean + chol * z;
    const double lg = pf.log_norm - 0.5 * z.squaredNorm();
    const double a = l1(x);
    const double b = l2(x);
    double w;
    if (kl_forward) {
      w = std::exp(a - lg) * (a - b);
    } else if (kl_reverse) {
      w = std::exp(b - lg) * (b - a);
    } else {
      w = std::exp(alpha * a + (1.0 - alpha) * b - lg);
    }
    // Welford.
    const double delta = w - mean;
    mean += delta / static_cast<double>(i + 1);
    m2acc += delta * (w - mean);
  }
  const double se = std::sqrt(m2acc / static_cast<double>(n - 1) / static_cast<double>(n));
  if (kl_forward || kl_reverse) {
    DivergenceResult r;
    r.alpha = alpha;
    r.method = DivergenceMethod::MonteCarlo;
    r.value = mean;
    r.error_estimate = se;
    return r;
  }
  return finish(alpha, mean, se, DivergenceMethod::MonteCarlo);
}

DivergenceResult alpha_divergence(const Distribution& p1, const Distribution& p2, double alpha,
                                  DivergenceMethod method, const DivergenceOptions& options) {
  check_pair(p1, p2, alpha);
  const bool gaussian_pair = std::holds_alternative<GaussianDist>(p1) && std::holds_alternative<GaussianDist>(p2);
  if (method == DivergenceMethod::Auto) {
    method = gaussian_pair ? DivergenceMethod::ClosedFormGaussian
             : dim_of(p1) == 1 ? DivergenceMethod::Quadrature1D
                               : DivergenceMethod::MonteCarlo;
  }
  switch (method) {
    case DivergenceMethod::ClosedFormGaussian:
      if (!gaussian_pair) throw InvalidInput("closed-form divergence needs two Gaussian laws");
      return gaussian_alpha_divergence(std::get<GaussianDist>(p1), std::get<GaussianDist>(p2), alpha);
    case DivergenceMethod::Quadrature1D:
      return quadrature_alpha_divergence(p1, p2, alpha, options.tolerance);
    case DivergenceMethod::MonteCarlo: {
      Engine rng = make_engine(options.mc_seed);
      return monte_carlo_alpha_divergence(p1, p2, alpha, options.mc_samples, rng);
    }
    case DivergenceMethod::Auto: break;
  }
  throw InvalidInput("alpha_divergence: unknown method");
}

double importance_variance_margin(const GaussianDist& p1, const GaussianDist& p2, double alpha) {
  check_pair(p1, p2, alpha);
  const auto g = proposal_for(p1.mean, p1.cov, p2.mean, p2.cov, alpha);
  const Matrix prec = 2.0 * alpha * p1.cov.inverse() + 2.0 * (1.0 - alpha) * p2.cov.inverse() - g.cov.inverse();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (prec + prec.transpose()));
  return eig.eigenvalues().minCoeff();
}

GaussianDist affine_transform(const GaussianDist& dist, const VectorRef& shift, const Matrix& linear) {
  if (linear.cols() != dist.mean.size() || shift.size() != linear.rows())
    throw InvalidInput("affine_transform: shape mismatch");
  GaussianDist out;
  out.mean = shift + linear * dist.mean;
  out.cov = linear * dist.cov * linear.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

GaussianDist project(const GaussianDist& dist, const VectorRef& direction) {
  if (direction.size() != dist.mean.size()) throw InvalidInput("project: shape mismatch");
  return GaussianDist::univariate(direction.dot(dist.mean), std::sqrt(direction.dot(dist.cov * direction)));
}

}  // namespace approxbandit
