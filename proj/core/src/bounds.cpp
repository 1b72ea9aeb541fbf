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

#include "approxbandit/bounds.hpp"

#include <cmath>

#include <fmt/format.h>

#include "approxbandit/errors.hpp"
#include "approxbandit/normal.hpp"

namespace approxbandit {

namespace {

// Tolerance on gamma thresholds so that rounded inputs such as 0.8413 for
// 1 - P(Z >= 1) are not rejected.
constexpr double kGammaSlack = 1e-4;

double budget_base(double epsilon, double alpha) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be finite and non-negative");
  const double base = epsilon * alpha * (alpha - 1.0) + 1.0;
  if (!(base > 0.0)) {
    throw InvalidInput(fmt::format(
        "eps*alpha*(alpha-1)+1 = {} <= 0 for alpha = {}, eps = {}: the divergence gives no control", base, alpha,
        epsilon));
  }
  return base;
}

void require_alpha1(double alpha1) {
  if (!(alpha1 > 1.0)) throw InvalidInput(fmt::format("alpha1 must exceed 1, got {}", alpha1));
}

void require_alpha2(double alpha2) {
  if (!(alpha2 < 0.0)) throw InvalidInput(fmt::format("alpha2 must be negative, got {}", alpha2));
}

double regret_log_term(std::size_t horizon, std::size_t dim, double lambda) {
  const auto t = static_cast<double>(horizon);
  return std::sqrt(2.0 * t * static_cast<double>(dim) * std::log1p(t / lambda));
}

void require_shape(std::size_t horizon, std::size_t dim) {
  if (horizon == 0 || dim == 0) throw InvalidInput("horizon and dim must be positive");
}

}  // namespace

DeltaTable normal_quantile_table() {
  return [](double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput(fmt::format("delta must lie in (0, 1), got {}", delta));
    return normal_quantile(1.0 - delta);
  };
}

BoundConstants BoundConstants::derive(double epsilon, double alpha1, double alpha2, double kappa1, double c1,
                                      double c1p, DeltaTable c_hat1) {
  BoundConstants k;
  k.epsilon = epsilon;
  k.alpha1 = alpha1;
  k.alpha2 = alpha2;
  k.kappa1 = kappa1;
  k.kappa2 = degrade_anti_concentration(kappa1, epsilon, alpha1);
  if (!(c1 > 0.0 && c1p > 0.0)) throw InvalidInput("c1 and c1' must be positive");
  k.c1 = c1;
  k.c1p = c1p;
  const auto t1 = degrade_concentration_type1(c1, c1p, epsilon, alpha2);
  k.c2 = t1.c;
  k.c2p = t1.cp;
  if (c_hat1) {
    k.c_hat1 = c_hat1;
    k.c_hat2 = [c_hat1, epsilon, alpha2](double delta) {
      return degrade_concentration_type2(c_hat1, epsilon, alpha2, delta);
    };
  }
  return k;
}

BoundConstants BoundConstants::gaussian(double epsilon, double alpha1, double alpha2, double c1, double c1p) {
  return derive(epsilon, alpha1, alpha2, normal_sf(1.0), c1, c1p, normal_quantile_table());
}

double degrade_anti_concentration(double kappa1, double epsilon, double alpha1) {
  require_alpha1(alpha1);
  if (!(kappa1 > 0.0 && kappa1 < 1.0)) throw InvalidInput(fmt::format("kappa1 must lie in (0, 1), got {}", kappa1));
  const double base = budget_base(epsilon, alpha1);
  return std::pow(base, 1.0 / (1.0 - alpha1)) * std::pow(kappa1, alpha1 / (alpha1 - 1.0));
}

Type1Constants degrade_concentration_type1(double c1, double c1p, double epsilon, double alpha2) {
  require_alpha2(alpha2);
  const double base = budget_base(epsilon, alpha2);
  return {c1 + (alpha2 - 1.0) / alpha2, c1p / std::pow(base, alpha2)};
}

double degrade_concentration_type2(const DeltaTable& c_hat1, double epsilon, double alpha2, double delta) {
  require_alpha2(alpha2);
  if (!c_hat1) throw InvalidInput("c_hat1 table is empty");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput(fmt::format("delta must lie in (0, 1), got {}", delta));
  const double base = budget_base(epsilon, alpha2);
  const double arg = std::pow(delta, (alpha2 - 1.0) / alpha2) * std::pow(base, alpha2);
  if (!(arg > 0.0 && arg < 1.0)) {
    throw InvalidInput(
        fmt::format("transformed delta {} outside (0, 1): budget eps = {} too large for delta = {}", arg, epsilon,
                    delta));
  }
  return c_hat1(arg);
}

double quantile_shift_bound(double gamma, double epsilon, double alpha) {
  if (alpha >= 0.0 && alpha <= 1.0) {
    throw InvalidInput(fmt::format("alpha = {} in [0, 1]: a single divergence of this order bounds no shift", alpha));
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput(fmt::format("gamma must lie in (0, 1), got {}", gamma));
  const double base = budget_base(epsilon, alpha);
  const double tail = 1.0 - gamma;
  return tail - std::pow(base, 1.0 / (1.0 - alpha)) * std::pow(tail, alpha / (alpha - 1.0));
}

double lints_regret_bound(const ConfidenceParams& params, const BoundConstants& constants, std::size_t horizon,
                          std::size_t dim) {
  params.validate();
  require_shape(horizon, dim);
  if (!(constants.kappa2 > 0.0 && constants.c2 > 0.0 && constants.c2p > 0.0))
    throw InvalidInput("bound constants are not derived");
  const auto t = static_cast<double>(horizon);
  const auto d = static_cast<double>(dim);
  ConfidenceParams shrunk = params;
  shrunk.delta = params.delta / (4.0 * t);
  const double b = beta(shrunk, horizon, dim);
  const double log_arg = constants.c2p * d / shrunk.delta;
  const double gamma_hat = b * std::sqrt(constants.c2 * d * std::max(std::log(log_arg), 0.0));
  return (b + gamma_hat * (1.0 + 4.0 / constants.kappa2)) * regret_log_term(horizon, dim, params.lambda) +
         (4.0 * gamma_hat / constants.kappa2) * std::sqrt((8.0 * t / params.lambda) * std::log(4.0 / params.delta));
}

double linbucb_gamma_threshold(const BoundConstants& constants, Inference inference) {
  return 1.0 - (inference == Inference::Exact ? constants.kappa1 : constants.kappa2);
}

double linbucb_regret_bound(const ConfidenceParams& params, const BoundConstants& constants, double gamma,
                            std::size_t horizon, std::size_t dim, AssumptionType assumption, Inference inference) {
  params.validate();
  require_shape(horizon, dim);
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput(fmt::format("gamma must lie in (0, 1), got {}", gamma));
  const double threshold = linbucb_gamma_threshold(constants, inference);
  if (gamma < threshold - kGammaSlack) {
    throw InvalidInput(fmt::format("gamma = {} is below the admissible threshold 1 - kappa = {}", gamma, threshold));
  }
  const bool exact = inference == Inference::Exact;
  const double tail = 1.0 - gamma;
  double factor;
  if (assumption == AssumptionType::TypeI) {
    const double c = exact ? constants.c1 : constants.c2;
    const double cp = exact ? constants.c1p : constants.c2p;
    const double d = static_cast<double>(dim);
    factor = std::sqrt(c * d * std::max(std::log(cp * d / tail), 0.0)) + 1.0;
  } else {
    const auto& table = exact ? constants.c_hat1 : constants.c_hat2;
    if (!table) throw InvalidInput("Type-II bound needs a c_hat table");
    factor = table(tail) + 1.0;
  }
  return beta(params, horizon, dim) * factor * regret_log_term(horizon, dim, params.lambda);
}

}  // namespace approxbandit
