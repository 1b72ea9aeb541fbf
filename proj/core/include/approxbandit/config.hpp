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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "approxbandit/environment.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/policy.hpp"

namespace approxbandit {

/// One experiment: an instance family, the policies run against it and the
/// seeds. Serialized as INI:
///
///   [experiment]  family, dim, n_arms, horizon, n_runs, base_seed, p3_seed,
///                 noise_sd, arm_scaling, output_dir, threads
///   [confidence]  nu, lambda, s_bound (number or "auto" = |theta*|), delta
///   [sweep]       gamma_grid (comma separated)
///   [policy.NAME] kind, inference, gamma, scale ("theory" or number),
///                 approx_mode
///
/// Unknown sections or keys are rejected. A [manifest] section written by
/// emit_outputs is accepted and checked against the derived seeds.
struct ExperimentConfig {
  Family family = Family::P3;
  std::size_t dim = 20;
  std::size_t n_arms = 10;
  std::size_t horizon = 1000;
  std::size_t n_runs = 10;
  std::uint64_t base_seed = 1;
  std::uint64_t p3_seed = 0;
  double noise_sd = 0.5;
  ArmScaling arm_scaling = ArmScaling::ProjectToBall;
  std::filesystem::path output_dir = "out";
  std::size_t threads = 0;  // 0: hardware concurrency

  double nu = 0.5;
  double lambda = 1.0;
  std::optional<double> s_bound;  // unset: |theta*|
  double delta = 0.05;

  std::vector<double> gamma_grid;
  std::vector<PolicyConfig> policies;

  /// Seed of run i.
  std::uint64_t run_seed(std::size_t run) const noexcept { return base_seed + run; }
  BanditInstance instance() const;
  ConfidenceParams confidence() const;
  /// Policy with the experiment's confidence parameters and horizon filled in.
  PolicyConfig resolved(const PolicyConfig& policy) const;

  /// Throws InvalidInput on the first unusable field; returns warnings.
  std::vector<std::string> validate() const;
  /// validate() plus a probe write into output_dir (created if missing).
  std::vector<std::string> validate_for_output() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize(const ExperimentConfig& config);

/// Comma-separated reals, e.g. "0.5,0.6, 0.7".
std::vector<double> parse_real_list(const std::string& text);

}  // namespace approxbandit
