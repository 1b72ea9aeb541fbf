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

#include "approxbandit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "approxbandit/errors.hpp"

namespace approxbandit {

namespace {
constexpr unsigned kMaxDepth = 15;
}

IntegralResult integrate(const std::function<double(double)>& f, double a, double b, double tolerance) {
  if (std::isnan(a) || std::isnan(b)) throw InvalidInput("integrate: NaN bound");
  if (a == b) return {};
  IntegralResult out;
  double l1 = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, tolerance,
                                                                            &out.error, &l1);
  if (!std::isfinite(out.value)) throw NumericError("integrate: non-finite result");
  return out;
}

IntegralResult integrate_real_line(const std::function<double(double)>& f, double lo, double hi,
                                   std::vector<double> breaks, double max_piece, double tolerance) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidInput("integrate: bad core interval");
  if (!(max_piece > 0.0)) throw InvalidInput("integrate: max_piece must be positive");
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> knots;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (b <= lo || a >= hi) continue;
    const auto pieces = static_cast<int>(std::ceil((b - a) / max_piece));
    for (int k = 0; k < pieces; ++k) knots.push_back(a + (b - a) * k / pieces);
  }
  knots.push_back(hi);

  const double inf = std::numeric_limits<double>::infinity();
  IntegralResult total = integrate(f, -inf, lo, tolerance);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto piece = integrate(f, knots[i], knots[i + 1], tolerance);
    total.value += piece.value;
    total.error += piece.error;
  }
  const auto tail = integrate(f, hi, inf, tolerance);
  total.value += tail.value;
  total.error += tail.error;
  return total;
}

}  // namespace approxbandit
