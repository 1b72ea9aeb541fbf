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

#include "approxbandit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "approxbandit/bounds.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"
#include "approxbandit/posterior.hpp"

namespace approxbandit {

namespace {

constexpr double kShiftSlack = 1e-9;
constexpr std::uint64_t kSuiteTag = 0x7E51;
// Random pairs beyond this divergence are redrawn: absolute tolerances stop
// meaning anything once D_alpha approaches 1/machine epsilon.
constexpr double kMaxPairDivergence = 1e3;

double uniform(Engine& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double log_uniform(Engine& rng, double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); }

Matrix random_matrix(std::size_t rows, std::size_t cols, Engine& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = standard_normal(rng);
  return m;
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return s[0] / s[s.size() - 1];
}

double min_precision(const GaussianDist& a, const GaussianDist& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> ea(a.cov);
  Eigen::SelfAdjointEigenSolver<Matrix> eb(b.cov);
  return std::min(1.0 / ea.eigenvalues().maxCoeff(), 1.0 / eb.eigenvalues().maxCoeff());
}

bool well_posed(const GaussianDist& p1, const GaussianDist& p2, const std::vector<double>& alphas, double rel) {
  const double floor = rel * min_precision(p1, p2);
  for (double a : alphas) {
    const auto div = gaussian_alpha_divergence(p1, p2, a);
    if (div.infinite || div.value > kMaxPairDivergence) return false;
    if (importance_variance_margin(p1, p2, a) < floor) return false;
  }
  return true;
}

std::pair<GaussianDist, GaussianDist> random_gaussian_pair(std::size_t dim, Engine& rng,
                                                           const std::vector<double>& alphas) {
  const auto d = static_cast<Eigen::Index>(dim);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GaussianDist p1;
    GaussianDist p2;
    p1.mean = Vector(d);
    p2.mean = Vector(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      p1.mean[i] = uniform(rng, -1.0, 1.0);
      p2.mean[i] = uniform(rng, -1.0, 1.0);
    }
    const Matrix a = random_matrix(dim, dim, rng);
    p1.cov = a * a.transpose() / static_cast<double>(dim) + 0.5 * Matrix::Identity(d, d);
    const Matrix m = Matrix::Identity(d, d) + 0.15 * random_matrix(dim, dim, rng);
    p2.cov = m * p1.cov * m.transpose();
    p2.cov = 0.5 * (p2.cov + p2.cov.transpose()).eval();
    if (well_posed(p1, p2, alphas, 0.1)) return {p1, p2};
  }
  throw NumericError("could not draw a well-posed Gaussian pair");
}

std::string count_detail(std::size_t failures, std::size_t total, const std::string& what) {
  return fmt::format("{}/{} {}", total - failures, total, what);
}

/// N(0, I) reweighted by w_in on a region and w_out off it; drawn by rejection.
class RegionReweightedNormal final : public ShapeSampler {
 public:
  RegionReweightedNormal(std::size_t dim, std::function<bool(const Vector&)> region, double w_in, double w_out)
      : dim_(dim), region_(std::move(region)), w_in_(w_in), w_out_(w_out), w_max_(std::max(w_in, w_out)) {}
  std::size_t dim() const override { return dim_; }
  Vector draw(Engine& rng) const override {
    Vector z(static_cast<Eigen::Index>(dim_));
    for (;;) {
      for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard_normal(rng);
      const double w = region_(z) ? w_in_ : w_out_;
      if (uniform01(rng) * w_max_ < w) return z;
    }
  }

 private:
  std::size_t dim_;
  std::function<bool(const Vector&)> region_;
  double w_in_;
  double w_out_;
  double w_max_;
};

double outside_weight(double p, double w) { return (1.0 - p * w) / (1.0 - p); }

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.passed; }));
}

InvarianceCheck verify_invariance(const GaussianDist& p1, const GaussianDist& p2, const VectorRef& shift,
                                  const Matrix& linear, const VectorRef& direction, double alpha, double tolerance) {
  if (linear.rows() != linear.cols()) throw InvalidInput("verify_invariance: the linear map must be square");
  InvarianceCheck c;
  const auto original = gaussian_alpha_divergence(p1, p2, alpha);
  const auto moved = gaussian_alpha_divergence(affine_transform(p1, shift, linear), affine_transform(p2, shift, linear),
                                               alpha);
  c.original = original.value;
  c.transformed = moved.value;
  if (original.infinite || moved.infinite) {
    c.passed = original.infinite == moved.infinite;
    c.residual = c.passed ? 0.0 : std::numeric_limits<double>::infinity();
    return c;
  }
  c.residual = std::abs(c.original - c.transformed) / std::max(1.0, std::abs(c.original));
  const auto proj = gaussian_alpha_divergence(project(p1, direction), project(p2, direction), alpha);
  c.projected = proj.value;
  c.projection_gap = c.projected - c.original;
  c.passed = c.residual < tolerance && c.projection_gap <= tolerance * std::max(1.0, std::abs(c.original));
  return c;
}

BlackBoxDist as_black_box(const GaussianDist& dist) {
  auto llt = std::make_shared<Eigen::LLT<Matrix>>(dist.cov);
  if (llt->info() != Eigen::Success) throw InvalidInput("as_black_box: covariance is not positive definite");
  const double log_norm = -0.5 * (static_cast<double>(dist.dim()) * std::log(2.0 * M_PI) +
                                  2.0 * llt->matrixLLT().diagonal().array().log().sum());
  BlackBoxDist b;
  b.dim = dist.dim();
  b.mean_hint = dist.mean;
  b.cov_hint = dist.cov;
  b.log_density = [llt, mean = dist.mean, log_norm](const VectorRef& x) {
    const Vector y = llt->matrixL().solve(x - mean);
    return log_norm - 0.5 * y.squaredNorm();
  };
  b.sample = [llt, mean = dist.mean](Engine& rng) {
    Vector z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard_normal(rng);
    return Vector(mean + llt->matrixL() * z);
  };
  return b;
}

McInvarianceCheck verify_invariance_mc(const GaussianDist& p1, const GaussianDist& p2, const VectorRef& shift,
                                       const Matrix& linear, double alpha, std::size_t samples, Engine& rng,
                                       double max_std_errors) {
  McInvarianceCheck c;
  c.closed_form = gaussian_alpha_divergence(p1, p2, alpha).value;
  const auto est = monte_carlo_alpha_divergence(as_black_box(affine_transform(p1, shift, linear)),
                                                as_black_box(affine_transform(p2, shift, linear)), alpha, samples,
                                                rng);
  c.estimate = est.value;
  c.std_error = est.error_estimate;
  c.residual = std::abs(c.estimate - c.closed_form) / c.std_error;
  c.passed = std::isfinite(c.residual) && c.residual <= max_std_errors;
  return c;
}

std::pair<GaussianDist, GaussianDist> random_gaussian_pair_1d(Engine& rng, const std::vector<double>& alphas) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto p1 = GaussianDist::univariate(uniform(rng, -1.0, 1.0), log_uniform(rng, 0.5, 2.0));
    auto p2 = GaussianDist::univariate(uniform(rng, -1.0, 1.0), log_uniform(rng, 0.5, 2.0));
    if (well_posed(p1, p2, alphas, 0.25)) return {p1, p2};
  }
  throw NumericError("could not draw a well-posed Gaussian pair");
}

VerifyReport run_oracle_agreement(std::uint64_t seed, std::size_t pairs, const std::vector<double>& alphas,
                                  std::size_t mc_samples) {
  VerifyReport report{"divergence-oracles", {}};
  Engine rng = make_engine(seed, {kSuiteTag, 1});
  std::vector<std::pair<GaussianDist, GaussianDist>> cases;
  for (std::size_t i = 0; i < pairs; ++i) cases.push_back(random_gaussian_pair_1d(rng, alphas));

  for (double alpha : alphas) {
    double worst_quad = 0.0;
    double worst_mc = 0.0;
    double worst_sym = 0.0;
    std::size_t quad_fail = 0;
    std::size_t mc_fail = 0;
    std::size_t sym_fail = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& [p1, p2] = cases[i];
      const auto cf = gaussian_alpha_divergence(p1, p2, alpha);
      const auto quad = quadrature_alpha_divergence(p1, p2, alpha, 1e-10);
      Engine mc_rng = make_engine(seed, {kSuiteTag, 2, i, static_cast<std::uint64_t>(std::llround(alpha * 1000.0))});
      const auto mc = monte_carlo_alpha_divergence(p1, p2, alpha, mc_samples, mc_rng);
      const auto mirror = gaussian_alpha_divergence(p2, p1, 1.0 - alpha);
      const double dq = std::abs(quad.value - cf.value);
      const double dm = std::abs(mc.value - cf.value) / mc.error_estimate;
      const double ds = std::abs(mirror.value - cf.value);
      worst_quad = std::max(worst_quad, dq);
      worst_mc = std::max(worst_mc, dm);
      worst_sym = std::max(worst_sym, ds);
      quad_fail += !(dq <= 1e-6);
      mc_fail += !(dm <= 3.0);
      sym_fail += !(ds <= 1e-9);
    }
    const auto n = cases.size();
    report.rows.push_back({fmt::format("quadrature vs closed form, alpha={}", alpha), quad_fail == 0, worst_quad, 1e-6,
                           count_detail(quad_fail, n, "pairs; residual = max |quadrature - closed form|")});
    report.rows.push_back({fmt::format("monte carlo vs closed form, alpha={}", alpha), mc_fail == 0, worst_mc, 3.0,
                           count_detail(mc_fail, n, "pairs; residual = max standard errors")});
    report.rows.push_back({fmt::format("symmetry D_a(P1,P2) = D_(1-a)(P2,P1), alpha={}", alpha), sym_fail == 0,
                           worst_sym, 1e-9, count_detail(sym_fail, n, "pairs; residual = max abs difference")});
  }
  return report;
}

VerifyReport run_invariance_suite(std::uint64_t seed, std::size_t cases, std::size_t mc_samples) {
  VerifyReport report{"invariance", {}};
  Engine rng = make_engine(seed, {kSuiteTag, 3});
  const std::vector<double> cf_alphas = {2.0, 3.0, -1.0, 0.5, 1.0, 0.0};
  const std::vector<double> mc_alphas = {2.0, -1.0, 0.5};

  {
    auto [p1, p2] = random_gaussian_pair(2, rng, {2.0});
    const Matrix eye = Matrix::Identity(2, 2);
    const auto c = verify_invariance(p1, p2, Vector::Zero(2), eye, Vector::Unit(2, 0), 2.0, 1e-6);
    report.rows.push_back({"identity map", c.original == c.transformed, std::abs(c.original - c.transformed), 0.0,
                           "residual = |D(X1,X2) - D(I X1, I X2)|, exact equality required"});
  }

  double worst_aff = 0.0;
  double worst_proj = -std::numeric_limits<double>::infinity();
  double worst_mc = 0.0;
  std::size_t aff_fail = 0;
  std::size_t proj_fail = 0;
  std::size_t mc_fail = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t dim = 2 + i % 2;
    const auto d = static_cast<Eigen::Index>(dim);
    auto [p1, p2] = random_gaussian_pair(dim, rng, mc_alphas);
    Matrix b = random_matrix(dim, dim, rng);
    while (condition_number(b) > 50.0) b = random_matrix(dim, dim, rng);
    Vector a(d);
    for (Eigen::Index k = 0; k < d; ++k) a[k] = 2.0 * standard_normal(rng);
    const Vector u = random_unit_vector(dim, rng);

    const double alpha = cf_alphas[i % cf_alphas.size()];
    const auto c = verify_invariance(p1, p2, a, b, u, alpha, 1e-6);
    worst_aff = std::max(worst_aff, c.residual);
    worst_proj = std::max(worst_proj, c.projection_gap);
    aff_fail += !(c.residual < 1e-6);
    proj_fail += !(c.projection_gap <= 1e-6 * std::max(1.0, c.original));

    const double mc_alpha = mc_alphas[i % mc_alphas.size()];
    Engine mc_rng = make_engine(seed, {kSuiteTag, 4, i});
    const auto m = verify_invariance_mc(p1, p2, a, b, mc_alpha, mc_samples, mc_rng);
    worst_mc = std::max(worst_mc, m.residual);
    mc_fail += !m.passed;
  }
  report.rows.push_back({"affine invariance, closed form", aff_fail == 0, worst_aff, 1e-6,
                         count_detail(aff_fail, cases, "maps; residual = max relative |D - D(a+BX)|")});
  report.rows.push_back({"projection data processing, closed form", proj_fail == 0, worst_proj, 1e-6,
                         count_detail(proj_fail, cases, "projections; residual = max D(u'X) - D(X)")});
  report.rows.push_back({"affine invariance, monte carlo", mc_fail == 0, worst_mc, 3.0,
                         count_detail(mc_fail, cases, "maps; residual = max standard errors")});
  return report;
}

double region_reweight_divergence(double p, double w, double alpha) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("region probability must lie in (0, 1)");
  const double w_out = outside_weight(p, w);
  if (!(w > 0.0 && w_out > 0.0)) throw InvalidInput("region weights must be positive");
  if (alpha == 1.0) return -(p * std::log(w) + (1.0 - p) * std::log(w_out));
  if (alpha == 0.0) return p * w * std::log(w) + (1.0 - p) * w_out * std::log(w_out);
  const double integral = p * std::pow(w, 1.0 - alpha) + (1.0 - p) * std::pow(w_out, 1.0 - alpha);
  return (integral - 1.0) / (alpha * (alpha - 1.0));
}

double region_weight_for_budget(double p, double alpha, double epsilon, bool increase) {
  if (!(epsilon > 0.0)) throw InvalidInput("budget must be positive");
  const double lo = increase ? 1.0 : 1e-12;
  const double hi = increase ? (1.0 - 1e-12) / p : 1.0;
  const auto f = [&](double w) { return region_reweight_divergence(p, w, alpha) - epsilon; };
  const double f_far = f(increase ? hi : lo);
  if (!(f_far > 0.0)) {
    throw InvalidInput(fmt::format("budget {} is not reachable by reweighting a region of mass {}", epsilon, p));
  }
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, increase ? -epsilon : f_far,
                                                        increase ? f_far : -epsilon,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

VerifyReport run_quantile_shift_suite(std::uint64_t seed, std::size_t pairs) {
  VerifyReport report{"quantile-shift", {}};
  Engine rng = make_engine(seed, {kSuiteTag, 5});
  const std::vector<double> gammas = {0.5, 0.8, 0.9, 0.95};
  const std::vector<double> alphas = {2.0, 3.0, -1.0, -2.0};

  struct Pair {
    GaussianDist pi;
    Distribution q;
    std::function<double(double)> q_cdf;
  };
  std::vector<Pair> cases;
  for (std::size_t i = 0; i < pairs; ++i) {
    const double m = uniform(rng, -1.0, 1.0);
    const double s = log_uniform(rng, 0.5, 2.0);
    auto pi = GaussianDist::univariate(m, s);
    if (i % 2 == 0) {
      const double qm = m + s * uniform(rng, -0.5, 0.5);
      const double qs = s * uniform(rng, 0.85, 1.2);
      cases.push_back({pi, GaussianDist::univariate(qm, qs), [qm, qs](double x) { return normal_cdf((x - qm) / qs); }});
    } else {
      // Reweight one side of a cut; every other cut sits on a tested quantile.
      const double z = (i % 4 == 1) ? normal_quantile(gammas[(i / 4) % gammas.size()]) : uniform(rng, -1.5, 1.5);
      const double upper_mass = normal_sf(z);
      const double w_hi = uniform(rng, 0.2, std::min(1.8, 0.95 / upper_mass));
      const double w_lo = (1.0 - w_hi * upper_mass) / (1.0 - upper_mass);
      PiecewiseGaussian1D q{m, s, {m + s * z}, {w_lo, w_hi}};
      cases.push_back({pi, q, [q](double x) { return q.cdf(x); }});
    }
  }

  double worst_norm = 0.0;
  for (const auto& c : cases) {
    if (const auto* q = std::get_if<PiecewiseGaussian1D>(&c.q)) worst_norm = std::max(worst_norm, std::abs(q->normalization_error()));
  }
  report.rows.push_back({"constructed laws normalized", worst_norm < 1e-12, worst_norm, 1e-12,
                         "residual = max |integral of Q - 1|"});

  for (double alpha : alphas) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t fails = 0;
    std::size_t checked = 0;
    for (const auto& c : cases) {
      const auto div = alpha_divergence(c.pi, c.q, alpha);
      if (div.infinite) continue;
      const double budget = div.value + div.error_estimate;
      for (double gamma : gammas) {
        const double q_pi = c.pi.mean[0] + std::sqrt(c.pi.cov(0, 0)) * normal_quantile(gamma);
        const double shift = c.q_cdf(q_pi) - gamma;
        const double bound = quantile_shift_bound(gamma, budget, alpha);
        const double margin = alpha > 1.0 ? bound - shift : shift - bound;
        worst = std::min(worst, margin);
        fails += !(margin >= -kShiftSlack);
        ++checked;
      }
    }
    report.rows.push_back({fmt::format("quantile shift {} bound, alpha={}", alpha > 1.0 ? "upper" : "lower", alpha),
                           fails == 0 && checked > 0, worst, -kShiftSlack,
                           count_detail(fails, checked, "(pair, gamma) checks; residual = min margin to the bound")});
  }
  return report;
}

VerifyReport run_concentration_suite(std::uint64_t seed, std::size_t samples) {
  VerifyReport report{"concentration", {}};
  struct Case {
    std::size_t dim;
    double epsilon;
    double alpha1;
    double alpha2;
  };
  const std::vector<Case> cases = {{2, 0.1, 2.0, -1.0}, {5, 0.1, 2.0, -1.0}, {2, 0.5, 3.0, -2.0}, {5, 0.05, 2.0, -1.0}};
  const std::vector<double> deltas = {0.2, 0.1, 0.05, 0.01};
  const double c1 = 4.0;
  const double c1p = 1.0;
  const double delta0 = 0.05;

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& k = cases[ci];
    const auto constants = BoundConstants::gaussian(k.epsilon, k.alpha1, k.alpha2, c1, c1p);
    const std::string tag = fmt::format("d={} eps={} a1={} a2={}", k.dim, k.epsilon, k.alpha1, k.alpha2);
    const auto n = static_cast<double>(samples);

    // Anti-concentration: move mass off {e1'z >= 1} under the alpha1 budget.
    {
      const double p = normal_sf(1.0);
      const double w = region_weight_for_budget(p, k.alpha1, k.epsilon, false);
      const double budget_err = std::abs(region_reweight_divergence(p, w, k.alpha1) - k.epsilon);
      RegionReweightedNormal q(k.dim, [](const Vector& z) { return z[0] >= 1.0; }, w, outside_weight(p, w));
      Engine rng = make_engine(seed, {kSuiteTag, 6, ci});
      std::size_t hits = 0;
      for (std::size_t s = 0; s < samples; ++s) hits += q.draw(rng)[0] >= 1.0;
      const double p_hat = static_cast<double>(hits) / n;
      const double half = kZ99 * std::sqrt(p_hat * (1.0 - p_hat) / n);
      const auto sweep = certify_anti_concentration(q, 64, samples, rng);
      const double worst = std::min(p_hat, sweep.kappa1_hat);
      const double tol = std::max(half, sweep.ci_halfwidth);
      report.rows.push_back({"kappa2 " + tag, worst >= constants.kappa2 - tol && budget_err < 1e-9,
                             worst - constants.kappa2, -tol,
                             fmt::format("P_Q(u'eta >= 1) = {:.5f} (e1), {:.5f} (min of 64 dirs); kappa2 = {:.5f}; "
                                         "exact along e1 = {:.5f}",
                                         p_hat, sweep.kappa1_hat, constants.kappa2, p * w)});
    }

    // Type-I: push mass beyond the (1 - delta0) norm quantile under the alpha2 budget.
    {
      boost::math::chi_squared chi(static_cast<double>(k.dim));
      const double r0 = std::sqrt(boost::math::quantile(chi, 1.0 - delta0));
      const double p = delta0;
      const double w = region_weight_for_budget(p, k.alpha2, k.epsilon, true);
      RegionReweightedNormal q(k.dim, [r0](const Vector& z) { return z.norm() > r0; }, w, outside_weight(p, w));
      Engine rng = make_engine(seed, {kSuiteTag, 7, ci});
      std::vector<double> norms(samples);
      for (auto& v : norms) v = q.draw(rng).norm();
      double worst = std::numeric_limits<double>::infinity();
      double tol = 0.0;
      std::string detail;
      for (double delta : deltas) {
        const double r2 = type1_radius(k.dim, constants.c2, constants.c2p, delta);
        const double cover = static_cast<double>(std::count_if(norms.begin(), norms.end(),
                                                               [r2](double v) { return v <= r2; })) / n;
        const double se = std::sqrt(delta * (1.0 - delta) / n);
        const double margin = cover - (1.0 - delta);
        if (margin + 3.0 * se < worst + tol) {
          worst = margin;
          tol = 3.0 * se;
        }
        detail += fmt::format("delta={}: P(|eta| <= {:.3f}) = {:.5f}; ", delta, r2, cover);
      }
      report.rows.push_back({"type-I c2, c2' " + tag, worst >= -tol, worst, -tol, detail});
    }

    // Type-II: push mass beyond the degraded quantile along e1.
    {
      const double t0 = constants.c_hat2(delta0);
      const double p = normal_sf(t0);
      const double w = region_weight_for_budget(p, k.alpha2, k.epsilon, true);
      RegionReweightedNormal q(k.dim, [t0](const Vector& z) { return z[0] > t0; }, w, outside_weight(p, w));
      Engine rng = make_engine(seed, {kSuiteTag, 8, ci});
      std::vector<double> proj(samples);
      for (auto& v : proj) v = q.draw(rng)[0];
      double worst = std::numeric_limits<double>::infinity();
      double tol = 0.0;
      std::string detail;
      for (double delta : deltas) {
        const double c2 = constants.c_hat2(delta);
        const double cover = static_cast<double>(std::count_if(proj.begin(), proj.end(),
                                                               [c2](double v) { return v <= c2; })) / n;
        const double se = std::sqrt(delta * (1.0 - delta) / n);
        const double margin = cover - (1.0 - delta);
        if (margin + 3.0 * se < worst + tol) {
          worst = margin;
          tol = 3.0 * se;
        }
        detail += fmt::format("delta={}: P(e1'eta <= {:.4f}) = {:.5f}; ", delta, c2, cover);
      }
      const auto sweep = certify_concentration_type2(q, delta0, 16, samples, rng);
      const bool sweep_ok = sweep.value <= t0 + 3.0 * sweep.std_error;
      detail += fmt::format("max over 16 dirs of the {}-quantile = {:.4f} vs c_hat2 = {:.4f}", 1.0 - delta0,
                            sweep.value, t0);
      report.rows.push_back({"type-II c_hat2 " + tag, worst >= -tol && sweep_ok, worst, -tol, detail});
    }
  }
  return report;
}

}  // namespace approxbandit
