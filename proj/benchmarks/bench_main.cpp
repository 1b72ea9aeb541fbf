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


#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "approxbandit/environment.hpp"
#include "approxbandit/linalg.hpp"
#include "approxbandit/policy.hpp"
#include "approxbandit/rng.hpp"

namespace ab = approxbandit;

namespace {

std::vector<ab::Vector> random_arms(std::size_t d, std::size_t n) {
  auto rng = ab::make_engine(7, {d});
  std::vector<ab::Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    ab::Vector x(static_cast<Eigen::Index>(d));
    for (auto& v : x) v = ab::standard_normal(rng);
    out.push_back(x / x.norm());
  }
  return out;
}

void BM_RankOneUpdate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto arms = random_arms(d, 1024);
  ab::RlsState s(d, 1.0);
  std::size_t i = 0;
  for (auto _ : state) {
    s.update(arms[i++ % arms.size()], 0.5);
    benchmark::DoNotOptimize(s.design_inv().data());
  }
}
BENCHMARK(BM_RankOneUpdate)->Arg(5)->Arg(20)->Arg(50)->Arg(200);

void BM_DenseInverse(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto arms = random_arms(d, 1024);
  ab::RlsState s(d, 1.0);
  for (const auto& a : arms) s.update(a, 0.5);
  for (auto _ : state) {
    s.refresh_inverse();
    benchmark::DoNotOptimize(s.design_inv().data());
  }
}
BENCHMARK(BM_DenseInverse)->Arg(5)->Arg(20)->Arg(50)->Arg(200);

void BM_DiagonalUpdate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto arms = random_arms(d, 1024);
  ab::DiagonalApproxState s(d, 1.0);
  std::size_t i = 0;
  for (auto _ : state) {
    s.update(arms[i++ % arms.size()], 0.5);
    benchmark::DoNotOptimize(s.diag_inv().data());
  }
}
BENCHMARK(BM_DiagonalUpdate)->Arg(5)->Arg(20)->Arg(50)->Arg(200);

// One select + update step on P3 with K = 10.
void policy_step(benchmark::State& state, ab::PolicyKind kind, ab::Inference inference) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto inst = ab::BanditInstance::make(ab::Family::P3, d, 10);
  ab::EnvironmentStream env(inst, 1);
  ab::PolicyConfig cfg;
  cfg.kind = kind;
  cfg.inference = inference;
  cfg.confidence.s_bound = inst.theta_norm();
  cfg.posterior_scale = 1.0;
  ab::Policy policy(cfg, d);
  auto rng = ab::make_engine(1, {ab::stream::kPolicy});
  for (auto _ : state) {
    const auto draw = env.next();
    const auto k = policy.select_arm(draw.arms, rng);
    policy.update(draw.arms[k], env.reward(draw.arms[k], draw.noise));
  }
}
BENCHMARK_CAPTURE(policy_step, lints_exact, ab::PolicyKind::LinTS, ab::Inference::Exact)->Arg(20)->Arg(50);
BENCHMARK_CAPTURE(policy_step, lints_approx, ab::PolicyKind::LinTS, ab::Inference::Approximate)->Arg(20)->Arg(50);
BENCHMARK_CAPTURE(policy_step, linbucb_exact, ab::PolicyKind::LinBUCB, ab::Inference::Exact)->Arg(20)->Arg(50);
BENCHMARK_CAPTURE(policy_step, linbucb_approx, ab::PolicyKind::LinBUCB, ab::Inference::Approximate)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
