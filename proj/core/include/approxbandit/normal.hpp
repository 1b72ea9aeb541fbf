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

namespace approxbandit {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double z) noexcept;
double normal_log_pdf(double z) noexcept;

/// Phi(z).
double normal_cdf(double z) noexcept;

/// 1 - Phi(z), accurate in the upper tail.
double normal_sf(double z) noexcept;

/// log(1 - Phi(z)); finite for every finite z (asymptotic series past the
/// point where erfc underflows).
double normal_log_sf(double z) noexcept;

/// log Phi(z).
double normal_log_cdf(double z) noexcept;

/// Inverse of Phi. Rational approximation (Acklam) followed by one Halley
/// refinement step; absolute error below 1e-12 on (1e-300, 1 - 1e-16).
/// Throws InvalidInput for p outside (0, 1).
double normal_quantile(double p);

}  // namespace approxbandit
