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
#include <stdexcept>
#include <string>
#include <vector>

#include "approxbandit/config.hpp"
#include "approxbandit/environment.hpp"
#include "approxbandit/policy.hpp"

namespace approxbandit {

/// Per-step statistics across runs. stderr is the sample sd over sqrt(n),
/// zero for a single run.
struct AggregateResult {
  std::vector<double> mean_cumulative;
  std::vector<double> stderr_cumulative;
  std::vector<double> per_run_final;
};

/// Throws InvalidInput when traces differ in length.
AggregateResult aggregate(const std::vector<RegretTrace>& runs);

struct PolicyResult {
  PolicyConfig policy;  // resolved
  std::vector<RegretTrace> runs;  // indexed like ExperimentResult::seeds
  AggregateResult aggregate;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<PolicyResult> policies;
};

/// A run that threw; carries where it happened.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(std::uint64_t seed, std::string policy, std::uint64_t step, const std::string& what);
  std::uint64_t seed;
  std::string policy;
  std::uint64_t step;
};

/// One policy on the arm and noise streams of `seed`. Policy randomness is
/// drawn from its own substream of the same seed, so identical policies give
/// identical traces.
RegretTrace run_single(const BanditInstance& instance, const PolicyConfig& policy, std::uint64_t seed,
                       std::size_t horizon, ArmScaling scaling = ArmScaling::ProjectToBall);

/// All (run, policy) pairs, in parallel over config.threads workers. The
/// result does not depend on scheduling. The first failure in (run, policy)
/// order is rethrown as RunFailure after all workers stop.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepRow {
  std::string policy;  // base policy name
  double gamma = 0.0;
  double mean_final = 0.0;
  double stderr_final = 0.0;
};

struct SweepResult {
  ExperimentResult experiment;  // one policy "NAME@gamma" per grid point
  std::vector<SweepRow> rows;
};

/// Reruns every LinBUCB policy of the config at each gamma of the grid on
/// shared streams. Throws InvalidInput without a LinBUCB policy.
SweepResult sensitivity_sweep(const ExperimentConfig& config, const std::vector<double>& gamma_grid);

}  // namespace approxbandit
