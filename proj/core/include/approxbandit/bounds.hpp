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

#include "approxbandit/linalg.hpp"

namespace approxbandit {

/// A delta-indexed constant table, e.g. c_hat(delta).
using DeltaTable = std::function<double(double delta)>;

/// delta -> Phi^{-1}(1 - delta): the Type-II constant of a standard Gaussian.
DeltaTable normal_quantile_table();

enum class AssumptionType { TypeI, TypeII };
enum class Inference { Exact, Approximate };

/// Constants of the well-behaved assumptions before (1) and after (2)
/// degradation by an inference-error budget epsilon measured in the
/// alpha1 > 1 and alpha2 < 0 divergences.
struct BoundConstants {
  double epsilon = 0.0;
  double alpha1 = 2.0;
  double alpha2 = -1.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double c1 = 0.0;
  double c1p = 0.0;
  double c2 = 0.0;
  double c2p = 0.0;
  DeltaTable c_hat1;
  DeltaTable c_hat2;

  /// Fills the degraded fields from the exact ones. epsilon = 0 is accepted as
  /// the zero-budget limit.
  static BoundConstants derive(double epsilon, double alpha1, double alpha2, double kappa1, double c1, double c1p,
                               DeltaTable c_hat1);
  /// Exact standard-Gaussian constants: kappa1 = P(Z >= 1), c_hat1 = normal
  /// quantiles, and the given Type-I pair.
  static BoundConstants gaussian(double epsilon, double alpha1 = 2.0, double alpha2 = -1.0, double c1 = 4.0,
                                 double c1p = 1.0);
};

/// kappa2 = (eps a1 (a1 - 1) + 1)^{1/(1 - a1)} kappa1^{a1/(a1 - 1)}.
double degrade_anti_concentration(double kappa1, double epsilon, double alpha1);

struct Type1Constants {
  double c = 0.0;
  double cp = 0.0;
};

/// c2 = c1 + (a2 - 1)/a2, c2' = c1' / (eps a2 (a2 - 1) + 1)^{a2}.
Type1Constants degrade_concentration_type1(double c1, double c1p, double epsilon, double alpha2);

/// c_hat2(delta) = c_hat1(delta^{(a2 - 1)/a2} (eps a2 (a2 - 1) + 1)^{a2}).
double degrade_concentration_type2(const DeltaTable& c_hat1, double epsilon, double alpha2, double delta);

/// 1 - gamma - (eps a (a - 1) + 1)^{1/(1 - a)} (1 - gamma)^{a/(a - 1)}:
/// an upper bound on the quantile shift for a > 1, a lower bound for a < 0.
double quantile_shift_bound(double gamma, double epsilon, double alpha);

/// Regret bound of LinTS with approximate inference.
double lints_regret_bound(const ConfidenceParams& params, const BoundConstants& constants, std::size_t horizon,
                          std::size_t dim);

/// Regret bound of LinBUCB. Throws InvalidInput when gamma < 1 - kappa, naming
/// the threshold.
double linbucb_regret_bound(const ConfidenceParams& params, const BoundConstants& constants, double gamma,
                            std::size_t horizon, std::size_t dim, AssumptionType assumption, Inference inference);

/// Smallest admissible LinBUCB quantile level, 1 - kappa.
double linbucb_gamma_threshold(const BoundConstants& constants, Inference inference);

}  // namespace approxbandit
