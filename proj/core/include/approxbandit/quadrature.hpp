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

#include <functional>
#include <vector>

namespace approxbandit {

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod on [a, b]; either bound may be infinite.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b, double tolerance = 1e-10);

/// Integral over the real line: the finite core [lo, hi] is cut at the
/// sorted `breaks` and into pieces no wider than `max_piece`, and the two
/// infinite tails are integrated separately.
IntegralResult integrate_real_line(const std::function<double(double)>& f, double lo, double hi,
                                   std::vector<double> breaks, double max_piece, double tolerance = 1e-10);

}  // namespace approxbandit
