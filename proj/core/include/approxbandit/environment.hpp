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
#include <string_view>
#include <vector>

#include "approxbandit/rng.hpp"
#include "approxbandit/types.hpp"

namespace approxbandit {

enum class Family { P1, P2, P3, Custom };
enum class ArmScaling { ProjectToBall, NormalizeToSphere };

std::string_view to_string(Family family);
std::string_view to_string(ArmScaling scaling);

/// theta* of a problem family:
///   P1: (-1)^i, P2: sin(i + 1) (radians), P3: Uniform(0, 1) draws under p3_seed.
struct BanditInstance {
  Family family = Family::P3;
  Vector theta_star;
  std::size_t n_arms = 10;
  double noise_sd = 0.5;
  std::uint64_t p3_seed = 0;

  static BanditInstance make(Family family, std::size_t dim, std::size_t n_arms, double noise_sd = 0.5,
                             std::uint64_t p3_seed = 0);
  static BanditInstance custom(Vector theta_star, std::size_t n_arms, double noise_sd = 0.5);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(theta_star.size()); }
  double theta_norm() const { return theta_star.norm(); }
};

/// n_arms standard-normal vectors, each projected into the unit ball
/// (x / max(1, ||x||)) or normalized onto the sphere.
ArmSet sample_arm_set(std::size_t dim, std::size_t n_arms, Engine& rng,
                      ArmScaling scaling = ArmScaling::ProjectToBall);

double expected_reward(const BanditInstance& instance, const VectorRef& arm);

/// arm^T theta* + noise_sd * xi with xi standard normal from rng.
double reward(const BanditInstance& instance, const VectorRef& arm, Engine& rng);

/// max_x x^T theta* - arms[chosen]^T theta*.
double step_regret(const BanditInstance& instance, const ArmSet& arms, std::size_t chosen);

struct RegretTrace {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;

  void push(double regret);
  std::size_t size() const noexcept { return instantaneous.size(); }
  double final_regret() const noexcept { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// One step of the environment: the arm set on offer and the standard-normal
/// noise draw that scales the reward of whichever arm is chosen.
struct StepDraw {
  ArmSet arms;
  double noise = 0.0;
};

/// Arm and noise streams of one run. Both are substreams of the run seed, so
/// every policy replaying the same seed faces identical arm sets and noise.
class EnvironmentStream {
 public:
  EnvironmentStream(const BanditInstance& instance, std::uint64_t run_seed,
                    ArmScaling scaling = ArmScaling::ProjectToBall);

  StepDraw next();
  double reward(const VectorRef& arm, double noise) const;
  const BanditInstance& instance() const noexcept { return *instance_; }

 private:
  const BanditInstance* instance_;
  ArmScaling scaling_;
  Engine arm_rng_;
  Engine noise_rng_;
};

}  // namespace approxbandit
