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

#include "approxbandit/adversarial.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "approxbandit/divergence.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"
#include "approxbandit/quadrature.hpp"

namespace approxbandit {

namespace {

constexpr double kTolerance = 1e-10;
constexpr double kCoreSds = 12.0;
// Below this region mass, rejection against Pi is replaced by exact
// conditioning on x1 - x2.
constexpr double kRejectionFloor = 1e-3;

double log_pdf_2d(const Vector& mean, const Matrix& cov, double x1, double x2) {
  const double det = cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0);
  const double d1 = x1 - mean[0];
  const double d2 = x2 - mean[1];
  const double maha = (cov(1, 1) * d1 * d1 - 2.0 * cov(0, 1) * d1 * d2 + cov(0, 0) * d2 * d2) / det;
  return -0.5 * maha - std::log(2.0 * M_PI) - 0.5 * std::log(det);
}

IntegralResult integrate_around(const std::function<double(double)>& f, double mean, double sd,
                                std::vector<double> breaks = {}, double piece_sds = 1.0) {
  return integrate_real_line(f, mean - kCoreSds * sd, mean + kCoreSds * sd, std::move(breaks), piece_sds * sd,
                             kTolerance);
}

// Fixed-rule integral of f against a law located at (mu, sd) whose integrand
// jumps at `cut`: sd-wide panels over mu +- 12 sd plus a finer window at the
// cut, where a far-tail reweighting concentrates its mass within sd/|z| of it.
template <unsigned Points>
double panel_sum(const std::function<double(double)>& f, std::vector<double> knots) {
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, knots[i], knots[i + 1], 0);
  return total;
}

double integrate_with_cut(const std::function<double(double)>& f, double mu, double sd, double cut) {
  const double z = (cut - mu) / sd;
  const double h = sd / std::max(1.0, std::abs(z));
  std::vector<double> knots;
  for (int k = -12; k <= 12; ++k) knots.push_back(mu + k * sd);
  // Above a far-tail cut the mass decays like exp(-k) in units of h.
  for (int k = -8; k <= 48; ++k) knots.push_back(cut + k * h);
  return panel_sum<15>(f, std::move(knots));
}

void require_two_dim(const GaussianPosterior& pi) {
  if (pi.dim() != 2) throw InvalidInput("adversarial posterior must be two-dimensional");
}

}  // namespace

double bucb_epsilon_threshold(double alpha, double gamma) {
  if (!(alpha > 0.0)) throw InvalidInput("adversary: alpha must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("adversary: gamma must lie in (0, 1)");
  if (alpha == 1.0) return -std::log(gamma);
  return (std::pow(gamma, 1.0 - alpha) - 1.0) / (alpha * (alpha - 1.0));
}

double choose_r(double alpha, double epsilon, std::optional<double> gamma, double cap) {
  if (!(alpha > 0.0)) throw InvalidInput("choose_r: alpha must be positive");
  if (!(epsilon > 0.0)) throw InvalidInput("choose_r: epsilon must be positive");
  double upper;
  if (alpha == 1.0) {
    upper = std::exp(epsilon);
  } else {
    const double base = epsilon * alpha * (alpha - 1.0) + 1.0;
    upper = base > 0.0 ? std::pow(base, 1.0 / (alpha - 1.0)) : std::numeric_limits<double>::infinity();
  }
  double lower = 1.0;
  if (gamma) {
    lower = 1.0 / *gamma;
    if (!(upper > lower)) {
      throw InvalidInput(fmt::format("choose_r: epsilon = {} does not exceed the threshold {} for gamma = {}",
                                     epsilon, bucb_epsilon_threshold(alpha, *gamma), *gamma));
    }
  }
  if (std::isinf(upper)) {
    if (!(cap > lower)) throw InvalidInput("choose_r: cap must exceed the lower end of the interval");
    return cap;
  }
  return 0.5 * (lower + upper);
}

AdversarialPosteriorPair::AdversarialPosteriorPair(GaussianPosterior pi, Construction construction, double r,
                                                   double gamma)
    : pi_(std::move(pi)), construction_(construction), r_(r), gamma_(gamma) {
  require_two_dim(pi_);
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidInput("adversary: r must be finite and >= 1");
  mean_ = pi_.mean();
  cov_ = pi_.scale() * pi_.scale() * pi_.covariance_shape();
  if (!(cov_(0, 0) > 0.0 && cov_(1, 1) > 0.0)) throw InvalidInput("adversary: posterior must be non-degenerate");
  const double sw = std::sqrt(cov_(0, 0) + cov_(1, 1) - 2.0 * cov_(0, 1));
  f_t_ = normal_cdf(-(mean_[0] - mean_[1]) / sw);
  if (construction == Construction::TsRegionReweight && !(f_t_ > 0.0 && f_t_ < 1.0))
    throw NumericError(fmt::format("adversary: F_t = {} is pinned at 0 or 1", f_t_));
  if (construction == Construction::BucbConditionalReweight) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("adversary: gamma must lie in (0, 1)");
    b_t_ = mean_[0] + std::sqrt(cov_(0, 0)) * normal_quantile(gamma);
  }
}

AdversarialPosteriorPair AdversarialPosteriorPair::ts_region(GaussianPosterior pi, double r) {
  return AdversarialPosteriorPair(std::move(pi), Construction::TsRegionReweight, r, 0.0);
}

AdversarialPosteriorPair AdversarialPosteriorPair::bucb_conditional(GaussianPosterior pi, double r, double gamma) {
  return AdversarialPosteriorPair(std::move(pi), Construction::BucbConditionalReweight, r, gamma);
}

std::pair<double, double> AdversarialPosteriorPair::conditional(double x1) const {
  const double slope = cov_(0, 1) / cov_(0, 0);
  const double var = cov_(1, 1) - cov_(0, 1) * slope;
  return {mean_[1] + slope * (x1 - mean_[0]), std::sqrt(std::max(var, 0.0))};
}

double AdversarialPosteriorPair::pi_density(double x1, double x2) const {
  return std::exp(log_pdf_2d(mean_, cov_, x1, x2));
}

double AdversarialPosteriorPair::log_weight(double x1, double x2) const {
  if (construction_ == Construction::TsRegionReweight) {
    return std::log(x1 < x2 ? (1.0 - (1.0 - f_t_) / r_) / f_t_ : 1.0 / r_);
  }
  if (x2 < b_t_) return -std::log(r_);
  const auto [mu, sd] = conditional(x1);
  const double z = (b_t_ - mu) / sd;
  // (1 - F/r) / (1 - F), with 1 - F taken from the log tail.
  return std::log1p(-normal_cdf(z) / r_) - normal_log_sf(z);
}

double AdversarialPosteriorPair::weight(double x1, double x2) const { return std::exp(log_weight(x1, x2)); }

// Log space: far above b the density underflows while the weight overflows.
double AdversarialPosteriorPair::q_density(double x1, double x2) const {
  return std::exp(log_pdf_2d(mean_, cov_, x1, x2) + log_weight(x1, x2));
}

Vector ts_adversary_sample(const AdversarialPosteriorPair& pair, Engine& rng) {
  if (pair.construction() != Construction::TsRegionReweight)
    throw InvalidInput("ts_adversary_sample: needs the region-reweight construction");
  const double f = pair.f_t();
  // Region {x1 >= x2} carries Q-mass (1 - F)/r.
  const bool upper = uniform01(rng) < (1.0 - f) / pair.r();
  const double region_mass = upper ? 1.0 - f : f;
  const auto& pi = pair.pi();

  if (region_mass >= kRejectionFloor) {
    for (std::size_t n = 0; n < kMaxRejections; ++n) {
      Vector y = pi.sample(rng);
      if ((y[0] >= y[1]) == upper) return y;
    }
    throw NumericError(fmt::format("ts_adversary_sample: no draw in region after {} proposals (F_t = {})",
                                   kMaxRejections, f));
  }

  // Exact: draw w = x1 - x2 from its truncated law, then condition y ~ Pi on it.
  const Vector& m = pair.mean();
  const Matrix& s = pair.cov();
  const double mw = m[0] - m[1];
  const double var_w = s(0, 0) + s(1, 1) - 2.0 * s(0, 1);
  const double sw = std::sqrt(var_w);
  const double zc = -mw / sw;
  const double u = 1.0 - uniform01(rng);  // (0, 1]
  const double z = upper ? -normal_quantile(u * normal_sf(zc)) : normal_quantile(u * normal_cdf(zc));
  const double w = mw + sw * z;
  const Vector y = pi.sample(rng);
  const Vector sc{{s(0, 0) - s(0, 1), s(1, 0) - s(1, 1)}};
  Vector x = y + sc * ((w - (y[0] - y[1])) / var_w);
  // Rounding can land a hair across the boundary.
  if (upper && x[0] < x[1]) x[1] = x[0];
  if (!upper && x[0] >= x[1]) x[1] = std::nextafter(x[0], std::numeric_limits<double>::infinity());
  return x;
}

double bucb_q_cdf_x2(const AdversarialPosteriorPair& pair, double x) {
  if (pair.construction() != Construction::BucbConditionalReweight)
    throw InvalidInput("bucb_q_cdf_x2: needs the conditional-reweight construction");
  const Vector& m = pair.mean();
  const double s1 = std::sqrt(pair.cov()(0, 0));
  const double b = pair.b_t();
  const double r = pair.r();
  const double slope = pair.cov()(0, 1) / pair.cov()(0, 0);
  const double sc = std::sqrt(std::max(pair.cov()(1, 1) - pair.cov()(0, 1) * slope, 0.0));
  const auto inner = [&](double x1) {
    const double mu = m[1] + slope * (x1 - m[0]);
    const double zx = (x - mu) / sc;
    if (x <= b) return normal_cdf(zx) / r;
    const double zb = (b - mu) / sc;
    const double f = normal_cdf(zb);
    // P(b <= x2 <= x | x1) / P(x2 >= b | x1) = 1 - sf(zx)/sf(zb).
    const double frac = -std::expm1(normal_log_sf(zx) - normal_log_sf(zb));
    return f / r + (1.0 - f / r) * frac;
  };
  const auto f = [&](double x1) { return normal_pdf((x1 - m[0]) / s1) / s1 * inner(x1); };
  return integrate_around(f, m[0], s1, {}, 4.0).value;
}

std::pair<double, double> bucb_adversary_quantiles(const AdversarialPosteriorPair& pair, double gamma) {
  if (pair.construction() != Construction::BucbConditionalReweight)
    throw InvalidInput("bucb_adversary_quantiles: needs the conditional-reweight construction");
  if (gamma != pair.gamma()) throw InvalidInput("bucb_adversary_quantiles: gamma differs from the construction's");
  const double s2 = std::sqrt(pair.cov()(1, 1));
  const double start = pair.mean()[1] + s2 * normal_quantile(gamma);
  const auto g = [&](double x) { return bucb_q_cdf_x2(pair, x) - gamma; };
  double lo = start;
  double hi = start;
  double g_lo = g(lo);
  double g_hi = g_lo;
  double step = s2;
  for (int k = 0; g_lo > 0.0; ++k) {
    if (k > 60) throw NumericError("bucb_adversary_quantiles: cannot bracket the quantile from below");
    hi = lo;
    g_hi = g_lo;
    lo -= step;
    step *= 2.0;
    g_lo = g(lo);
  }
  step = s2;
  for (int k = 0; g_hi < 0.0; ++k) {
    if (k > 60) throw NumericError("bucb_adversary_quantiles: cannot bracket the quantile from above");
    lo = hi;
    g_lo = g_hi;
    hi += step;
    step *= 2.0;
    g_hi = g(hi);
  }
  double q2 = lo;
  if (g_lo == 0.0) {
    q2 = lo;
  } else if (g_hi == 0.0) {
    q2 = hi;
  } else {
    std::uintmax_t iters = 100;
    const auto [a, b] =
        boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(44), iters);
    q2 = 0.5 * (a + b);
  }
  return {pair.b_t(), q2};
}

BudgetCertificate certify_budget(const AdversarialPosteriorPair& pair, double alpha, bool nested) {
  if (!(alpha > 0.0)) throw InvalidInput("certify_budget: alpha must be positive");
  BudgetCertificate cert;
  const double r = pair.r();
  cert.analytic_bound = alpha == 1.0 ? std::log(r) : (std::pow(r, alpha - 1.0) - 1.0) / (alpha * (alpha - 1.0));
  const Vector& m = pair.mean();
  const Matrix& s = pair.cov();

  if (pair.construction() == Construction::TsRegionReweight) {
    // q/pi depends on w = x1 - x2 only, so the divergence is that of the
    // w-marginals.
    const double mw = m[0] - m[1];
    const double sw = std::sqrt(s(0, 0) + s(1, 1) - 2.0 * s(0, 1));
    const double f = pair.f_t();
    PiecewiseGaussian1D q{mw, sw, {0.0}, {(1.0 - (1.0 - f) / r) / f, 1.0 / r}};
    const auto d = quadrature_alpha_divergence(GaussianDist::univariate(mw, sw), q, alpha, kTolerance);
    cert.divergence = d.value;
    cert.error = d.error_estimate;
  } else {
    const double s1 = std::sqrt(s(0, 0));
    const double slope = s(0, 1) / s(0, 0);
    const double sc = std::sqrt(std::max(s(1, 1) - s(0, 1) * slope, 0.0));
    const double b = pair.b_t();
    const double log_r = std::log(r);
    const auto inner = [&](double x1) {
      const double z = (b - m[1] - slope * (x1 - m[0])) / sc;
      const double f = normal_cdf(z);
      const double log_tail = normal_log_sf(z);            // log(1 - F)
      const double log_keep = std::log1p(-f / r);          // log(1 - F/r)
      if (alpha == 1.0) return std::exp(log_tail) * (log_tail - log_keep) + f * log_r;
      const double mass = std::exp(alpha * log_tail + (1.0 - alpha) * log_keep) + std::exp((alpha - 1.0) * log_r) * f;
      return (mass - 1.0) / (alpha * (alpha - 1.0));
    };
    const auto integrand = [&](double x1) { return normal_pdf((x1 - m[0]) / s1) / s1 * inner(x1); };
    const auto d = integrate_around(integrand, m[0], s1);
    cert.divergence = d.value;
    cert.error = d.error;
  }

  if (nested) {
    const double s1 = std::sqrt(s(0, 0));
    const double slope = s(0, 1) / s(0, 0);
    const double sc = std::sqrt(std::max(s(1, 1) - s(0, 1) * slope, 0.0));
    const bool ts = pair.construction() == Construction::TsRegionReweight;
    const auto column = [&](double x1) {
      const double mu = m[1] + slope * (x1 - m[0]);
      return integrate_with_cut([&](double x2) { return pair.q_density(x1, x2); }, mu, sc, ts ? x1 : pair.b_t());
    };
    std::vector<double> outer;
    for (int k = -12; k <= 12; ++k) outer.push_back(m[0] + k * s1);
    cert.normalization_error = std::abs(panel_sum<31>(column, std::move(outer)) - 1.0);
    if (!ts) {
      double worst = 0.0;
      for (double z : {-2.0, -1.0, 0.0, 0.5, 1.5, 3.0}) {
        const double x1 = m[0] + z * s1;
        worst = std::max(worst, std::abs(column(x1) - normal_pdf(z) / s1));
      }
      cert.marginal_error = worst;
    }
  }
  return cert;
}

AdversarialEpisode run_adversarial_episode(const AdversarialOptions& options) {
  if (!(options.mu1 > options.mu2)) throw InvalidInput("adversarial episode: needs mu1 > mu2");
  if (options.horizon == 0) throw InvalidInput("adversarial episode: horizon must be positive");
  const bool ts = options.policy == PolicyKind::LinTS;

  PolicyConfig config;
  config.kind = options.policy;
  config.inference = Inference::Exact;
  config.gamma = options.gamma;
  config.horizon = options.horizon;
  config.confidence.nu = options.noise_sd;
  config.confidence.lambda = options.lambda;
  config.confidence.delta = options.delta;
  config.confidence.s_bound = std::max(std::hypot(options.mu1, options.mu2), 1e-12);
  Policy policy(config, 2);

  AdversarialEpisode ep;
  ep.r = options.r_override ? *options.r_override
                            : choose_r(options.alpha, options.epsilon, ts ? std::nullopt : std::optional(options.gamma));
  const ArmSet arms = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const double mu[2] = {options.mu1, options.mu2};
  Engine rng = make_engine(options.seed, {stream::kAdversary});
  Engine noise = make_engine(options.seed, {stream::kNoise});

  for (std::size_t t = 0; t < options.horizon; ++t) {
    const auto pi = policy.posterior();
    const auto pair = ts ? AdversarialPosteriorPair::ts_region(pi, ep.r)
                         : AdversarialPosteriorPair::bucb_conditional(pi, ep.r, options.gamma);
    std::size_t chosen;
    if (ts) {
      const Vector theta = ts_adversary_sample(pair, rng);
      const double scores[2] = {theta[0], theta[1]};
      chosen = argmax(scores);
    } else {
      const auto [q1, q2] = bucb_adversary_quantiles(pair, options.gamma);
      const double scores[2] = {q1, q2};
      chosen = argmax(scores);
    }
    const bool nested = options.nested_check_every > 0 && t % options.nested_check_every == 0;
    const auto cert = certify_budget(pair, options.alpha, nested);
    ep.certified.push_back(cert.divergence);
    ep.f_t.push_back(pair.f_t());
    ep.b_t.push_back(pair.b_t());
    ep.max_divergence = std::max(ep.max_divergence, cert.divergence);
    ep.max_bound_violation = std::max(ep.max_bound_violation, cert.divergence - cert.analytic_bound);
    if (nested) {
      ep.max_normalization_error = std::max(ep.max_normalization_error, cert.normalization_error);
      if (!ts) ep.max_marginal_error = std::max(ep.max_marginal_error, cert.marginal_error);
    }
    if (!(cert.divergence <= options.epsilon)) ep.budget_held = false;

    ep.chosen.push_back(chosen);
    ep.trace.push(mu[0] - mu[chosen]);
    policy.update(arms[chosen], mu[chosen] + options.noise_sd * standard_normal(noise));
  }
  return ep;
}

}  // namespace approxbandit
