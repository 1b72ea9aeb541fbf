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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "approxbandit/experiment.hpp"

namespace approxbandit {

struct OutputFiles {
  std::filesystem::path traces;     // step,instant_regret,cum_regret,policy,seed
  std::filesystem::path aggregate;  // step,mean,stderr,policy
  std::filesystem::path plot;       // regret.svg
  std::filesystem::path manifest;   // config plus [manifest] seeds
};

void write_traces_csv(const ExperimentResult& result, std::ostream& out);
void write_aggregate_csv(const ExperimentResult& result, std::ostream& out);
/// Mean cumulative regret per policy with a +-1 stderr band.
void write_regret_svg(const ExperimentResult& result, std::ostream& out, const std::string& title = "");
/// Loadable by parse_config; reproduces the run.
std::string manifest(const ExperimentResult& result);
/// gamma,mean_final,stderr_final,policy
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

/// Writes the four files into dir (created if missing). Throws InvalidInput
/// when a file cannot be written.
OutputFiles emit_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace approxbandit
