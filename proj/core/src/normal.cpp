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

#include "approxbandit/normal.hpp"

#include <cmath>
#include <limits>

#include "approxbandit/errors.hpp"

namespace approxbandit {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Acklam's coefficients.
constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                        1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                        6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                        -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                        3.754408661907416e+00};

constexpr double kLow = 0.02425;

double acklam(double p) {
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_pdf(double z) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_log_pdf(double z) noexcept { return -0.5 * z * z - kLogSqrt2Pi; }

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_sf(double z) noexcept { return 0.5 * std::erfc(z * kInvSqrt2); }

double normal_log_sf(double z) noexcept {
  if (z < 35.0) return std::log(normal_sf(z));
  const double r = 1.0 / (z * z);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return normal_log_pdf(z) - std::log(z) + std::log(series);
}

double normal_log_cdf(double z) noexcept { return normal_log_sf(-z); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("normal_quantile: p must lie in (0, 1)");
  double x = acklam(p);
  // One Halley step on Phi(x) - p; the residual is taken from the tail that
  // keeps relative precision.
  const double e = (p < 0.5) ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  if (std::isfinite(u)) x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace approxbandit
