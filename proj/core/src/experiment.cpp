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


#include "approxbandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "approxbandit/errors.hpp"
#include "approxbandit/rng.hpp"

namespace approxbandit {

AggregateResult aggregate(const std::vector<RegretTrace>& runs) {
  AggregateResult out;
  if (runs.empty()) return out;
  const std::size_t steps = runs.front().size();
  for (const auto& r : runs)
    if (r.size() != steps) throw InvalidInput("aggregate: traces differ in length");
  const auto n = static_cast<double>(runs.size());
  out.mean_cumulative.resize(steps);
  out.stderr_cumulative.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.cumulative[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.cumulative[t] - mean) * (r.cumulative[t] - mean);
    out.mean_cumulative[t] = mean;
    out.stderr_cumulative[t] = runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  }
  for (const auto& r : runs) out.per_run_final.push_back(r.final_regret());
  return out;
}

RunFailure::RunFailure(std::uint64_t seed_, std::string policy_, std::uint64_t step_, const std::string& what)
    : std::runtime_error(fmt::format("run failed (seed {}, policy {}, step {}): {}", seed_, policy_, step_, what)),
      seed(seed_),
      policy(std::move(policy_)),
      step(step_) {}

RegretTrace run_single(const BanditInstance& instance, const PolicyConfig& policy, std::uint64_t seed,
                       std::size_t horizon, ArmScaling scaling) {
  std::uint64_t t = 0;
  try {
    EnvironmentStream env(instance, seed, scaling);
    Policy agent(policy, instance.dim());
    Engine rng = make_engine(seed, {stream::kPolicy});
    RegretTrace trace;
    trace.instantaneous.reserve(horizon);
    trace.cumulative.reserve(horizon);
    for (; t < horizon; ++t) {
      const auto draw = env.next();
      const std::size_t chosen = agent.select_arm(draw.arms, rng);
      agent.update(draw.arms[chosen], env.reward(draw.arms[chosen], draw.noise));
      trace.push(step_regret(instance, draw.arms, chosen));
    }
    return trace;
  } catch (const RunFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw RunFailure(seed, policy.name, t, e.what());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  for (std::size_t i = 0; i < config.n_runs; ++i) result.seeds.push_back(config.run_seed(i));
  const BanditInstance instance = config.instance();
  for (const auto& p : config.policies) {
    PolicyResult pr;
    pr.policy = config.resolved(p);
    pr.runs.resize(config.n_runs);
    result.policies.push_back(std::move(pr));
  }

  const std::size_t n_policies = result.policies.size();
  const std::size_t tasks = config.n_runs * n_policies;
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t k = next++; k < tasks && !failed; k = next++) {
      const std::size_t run = k / n_policies;
      auto& pr = result.policies[k % n_policies];
      try {
        pr.runs[run] = run_single(instance, pr.policy, result.seeds[run], config.horizon, config.arm_scaling);
      } catch (...) {
        errors[k] = std::current_exception();
        failed = true;
      }
    }
  };
  std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(tasks, 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& pr : result.policies) pr.aggregate = aggregate(pr.runs);
  return result;
}

SweepResult sensitivity_sweep(const ExperimentConfig& config, const std::vector<double>& gamma_grid) {
  if (gamma_grid.empty()) throw InvalidInput("sweep: empty gamma grid");
  ExperimentConfig swept = config;
  swept.policies.clear();
  std::vector<std::pair<std::string, double>> keys;
  for (const auto& p : config.policies) {
    if (p.kind != PolicyKind::LinBUCB) continue;
    for (double g : gamma_grid) {
      PolicyConfig variant = p;
      variant.gamma = g;
      variant.name = fmt::format("{}@{}", p.name, g);
      swept.policies.push_back(std::move(variant));
      keys.emplace_back(p.name, g);
    }
  }
  if (swept.policies.empty()) throw InvalidInput("sweep: the config has no LinBUCB policy");

  SweepResult out;
  out.experiment = run_experiment(swept);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& finals = out.experiment.policies[i].aggregate;
    SweepRow row;
    row.policy = keys[i].first;
    row.gamma = keys[i].second;
    row.mean_final = finals.mean_cumulative.empty() ? 0.0 : finals.mean_cumulative.back();
    row.stderr_final = finals.stderr_cumulative.empty() ? 0.0 : finals.stderr_cumulative.back();
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace approxbandit
