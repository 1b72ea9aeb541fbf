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

#include "approxbandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "approxbandit/errors.hpp"

namespace approxbandit {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P3: return "P3";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(ArmScaling scaling) {
  return scaling == ArmScaling::ProjectToBall ? "ball" : "sphere";
}

BanditInstance BanditInstance::make(Family family, std::size_t dim, std::size_t n_arms, double noise_sd,
                                    std::uint64_t p3_seed) {
  if (dim == 0 || n_arms == 0) throw InvalidInput("instance: dim and n_arms must be positive");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw InvalidInput("instance: noise_sd must be >= 0");
  BanditInstance inst;
  inst.family = family;
  inst.n_arms = n_arms;
  inst.noise_sd = noise_sd;
  inst.p3_seed = p3_seed;
  inst.theta_star = Vector(static_cast<Eigen::Index>(dim));
  Engine rng = make_engine(p3_seed, {stream::kInstance});
  for (Eigen::Index i = 0; i < inst.theta_star.size(); ++i) {
    switch (family) {
      case Family::P1: inst.theta_star[i] = (i % 2 == 0) ? 1.0 : -1.0; break;
      case Family::P2: inst.theta_star[i] = std::sin(static_cast<double>(i + 1)); break;
      case Family::P3: inst.theta_star[i] = uniform01(rng); break;
      case Family::Custom: throw InvalidInput("instance: use BanditInstance::custom for a given theta");
    }
  }
  return inst;
}

BanditInstance BanditInstance::custom(Vector theta_star, std::size_t n_arms, double noise_sd) {
  if (theta_star.size() == 0 || n_arms == 0) throw InvalidInput("instance: dim and n_arms must be positive");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw InvalidInput("instance: noise_sd must be >= 0");
  if (!theta_star.allFinite()) throw InvalidInput("instance: theta* must be finite");
  BanditInstance inst;
  inst.family = Family::Custom;
  inst.theta_star = std::move(theta_star);
  inst.n_arms = n_arms;
  inst.noise_sd = noise_sd;
  return inst;
}

ArmSet sample_arm_set(std::size_t dim, std::size_t n_arms, Engine& rng, ArmScaling scaling) {
  if (n_arms == 0) throw InvalidInput("sample_arm_set: n_arms must be positive");
  ArmSet arms(n_arms, Vector(static_cast<Eigen::Index>(dim)));
  for (auto& x : arms) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = standard_normal(rng);
    const double norm = x.norm();
    x /= scaling == ArmScaling::ProjectToBall ? std::max(1.0, norm) : norm;
  }
  return arms;
}

double expected_reward(const BanditInstance& instance, const VectorRef& arm) {
  if (arm.size() != instance.theta_star.size()) throw InvalidInput("reward: arm dimension mismatch");
  return arm.dot(instance.theta_star);
}

double reward(const BanditInstance& instance, const VectorRef& arm, Engine& rng) {
  return expected_reward(instance, arm) + instance.noise_sd * standard_normal(rng);
}

double step_regret(const BanditInstance& instance, const ArmSet& arms, std::size_t chosen) {
  if (chosen >= arms.size()) throw InvalidInput("step_regret: chosen index out of range");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& arm : arms) best = std::max(best, expected_reward(instance, arm));
  return best - expected_reward(instance, arms[chosen]);
}

void RegretTrace::push(double regret) {
  instantaneous.push_back(regret);
  cumulative.push_back(cumulative.empty() ? regret : cumulative.back() + regret);
}

EnvironmentStream::EnvironmentStream(const BanditInstance& instance, std::uint64_t run_seed, ArmScaling scaling)
    : instance_(&instance),
      scaling_(scaling),
      arm_rng_(make_engine(run_seed, {stream::kArms})),
      noise_rng_(make_engine(run_seed, {stream::kNoise})) {}

StepDraw EnvironmentStream::next() {
  StepDraw draw;
  draw.arms = sample_arm_set(instance_->dim(), instance_->n_arms, arm_rng_, scaling_);
  draw.noise = standard_normal(noise_rng_);
  return draw;
}

double EnvironmentStream::reward(const VectorRef& arm, double noise) const {
  return expected_reward(*instance_, arm) + instance_->noise_sd * noise;
}

}  // namespace approxbandit
