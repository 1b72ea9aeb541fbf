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


// approxbandit command-line tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "approxbandit/adversarial.hpp"
#include "approxbandit/bounds.hpp"
#include "approxbandit/config.hpp"
#include "approxbandit/errors.hpp"
#include "approxbandit/experiment.hpp"
#include "approxbandit/output.hpp"
#include "approxbandit/verify.hpp"

namespace ab = approxbandit;

namespace {

struct BoundPreset {
  std::size_t dim;
  std::size_t horizon;
  double epsilon;
  double gamma;
  ab::ConfidenceParams confidence;
};

const std::map<std::string, BoundPreset>& bound_presets() {
  static const std::map<std::string, BoundPreset> presets = {
      {"exact-d20", {20, 1000, 0.0, 0.9, {0.5, 1.0, std::sqrt(20.0), 0.05}}},
      {"approx-d20", {20, 1000, 0.1, 0.9, {0.5, 1.0, std::sqrt(20.0), 0.05}}},
      {"approx-d5", {5, 10000, 0.1, 0.9, {0.5, 1.0, std::sqrt(5.0), 0.05}}},
      {"adversarial", {2, 2000, 0.1, 0.9, {0.5, 1.0, 1.0, 0.05}}},
  };
  return presets;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
}

void print_summary(const ab::ExperimentResult& result) {
  fmt::print("{:<24} {:>12} {:>10} {:>10}\n", "policy", "mean R(T)", "stderr", "runs");
  for (const auto& pr : result.policies) {
    const auto& agg = pr.aggregate;
    fmt::print("{:<24} {:>12.3f} {:>10.3f} {:>10}\n", pr.policy.name,
               agg.mean_cumulative.empty() ? 0.0 : agg.mean_cumulative.back(),
               agg.stderr_cumulative.empty() ? 0.0 : agg.stderr_cumulative.back(), pr.runs.size());
  }
}

ab::ExperimentConfig prepare(const std::string& path, const std::string& output, std::size_t threads, bool set_threads) {
  auto config = ab::load_config(path);
  if (!output.empty()) config.output_dir = output;
  if (set_threads) config.threads = threads;
  print_warnings(config.validate_for_output());
  return config;
}

int cmd_run(const std::string& path, const std::string& output, std::size_t threads, bool set_threads) {
  const auto config = prepare(path, output, threads, set_threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = ab::run_experiment(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ab::emit_outputs(result, config.output_dir);
  print_summary(result);
  fmt::print("{} runs x {} policies in {:.2f} s; outputs in {}\n", result.seeds.size(), result.policies.size(), secs,
             config.output_dir.string());
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& grid_text, const std::string& output, std::size_t threads,
              bool set_threads) {
  const auto config = prepare(path, output, threads, set_threads);
  const auto grid = grid_text.empty() ? config.gamma_grid : ab::parse_real_list(grid_text);
  if (grid.empty()) throw ab::InvalidInput("sweep-gamma: no grid given (--grid or [sweep] gamma_grid)");
  const auto sweep = ab::sensitivity_sweep(config, grid);
  ab::emit_outputs(sweep.experiment, config.output_dir);
  std::ofstream out(config.output_dir / "sweep.csv", std::ios::binary);
  ab::write_sweep_csv(sweep, out);
  if (!out) throw ab::InvalidInput("sweep-gamma: cannot write sweep.csv");

  fmt::print("{:<20} {:>8} {:>12} {:>10}\n", "policy", "gamma", "mean R(T)", "stderr");
  for (const auto& row : sweep.rows)
    fmt::print("{:<20} {:>8} {:>12.3f} {:>10.3f}\n", row.policy, row.gamma, row.mean_final, row.stderr_final);
  fmt::print("outputs in {}\n", config.output_dir.string());
  return 0;
}

struct AdversarialArgs {
  std::string policy = "lints";
  double alpha = 2.0;
  double epsilon = 0.1;
  std::size_t horizon = 2000;
  double gamma = 0.9;
  std::optional<double> r;
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  std::size_t nested_every = 100;
  std::string output;
};

int cmd_adversarial(const AdversarialArgs& args) {
  ab::AdversarialOptions options;
  if (args.policy == "lints") options.policy = ab::PolicyKind::LinTS;
  else if (args.policy == "linbucb") options.policy = ab::PolicyKind::LinBUCB;
  else throw ab::InvalidInput(fmt::format("adversarial: --policy must be lints or linbucb, got '{}'", args.policy));
  options.alpha = args.alpha;
  options.epsilon = args.epsilon;
  options.horizon = args.horizon;
  options.gamma = args.gamma;
  options.r_override = args.r;
  options.nested_check_every = args.nested_every;

  ab::ExperimentResult result;
  result.config.dim = 2;
  result.config.n_arms = 2;
  result.config.horizon = args.horizon;
  result.config.n_runs = args.runs;
  ab::PolicyResult pr;
  pr.policy.kind = options.policy;
  pr.policy.name = fmt::format("adversarial-{}", args.policy);

  bool ok = true;
  fmt::print("{:>6} {:>8} {:>12} {:>10} {:>12} {:>12} {:>8}\n", "seed", "r", "R(T)", "R(T)/T", "max D", "norm err",
             "budget");
  for (std::size_t i = 0; i < args.runs; ++i) {
    options.seed = args.seed + i;
    const auto ep = ab::run_adversarial_episode(options);
    ok = ok && ep.budget_held;
    fmt::print("{:>6} {:>8.4f} {:>12.2f} {:>10.4f} {:>12.6f} {:>12.2e} {:>8}\n", options.seed, ep.r,
               ep.trace.final_regret(), ep.trace.final_regret() / static_cast<double>(args.horizon),
               ep.max_divergence, ep.max_normalization_error, ep.budget_held ? "held" : "BROKEN");
    result.seeds.push_back(options.seed);
    pr.runs.push_back(ep.trace);
  }
  pr.aggregate = ab::aggregate(pr.runs);
  fmt::print("mean R(T) = {:.3f}\n", pr.aggregate.mean_cumulative.back());
  if (!args.output.empty()) {
    result.policies.push_back(std::move(pr));
    std::filesystem::create_directories(args.output);
    std::ofstream traces(std::filesystem::path(args.output) / "traces.csv", std::ios::binary);
    ab::write_traces_csv(result, traces);
    std::ofstream agg(std::filesystem::path(args.output) / "aggregate.csv", std::ios::binary);
    ab::write_aggregate_csv(result, agg);
    std::ofstream svg(std::filesystem::path(args.output) / "regret.svg", std::ios::binary);
    ab::write_regret_svg(result, svg, fmt::format("adversarial {} alpha={} eps={}", args.policy, args.alpha,
                                                  args.epsilon));
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<ab::VerifyReport> reports;
  if (suite == "divergence" || suite == "all") {
    reports.push_back(ab::run_oracle_agreement(seed));
    reports.push_back(ab::run_invariance_suite(seed));
  }
  if (suite == "quantile-shift" || suite == "all") reports.push_back(ab::run_quantile_shift_suite(seed));
  if (suite == "concentration" || suite == "all") reports.push_back(ab::run_concentration_suite(seed));
  if (reports.empty()) throw ab::InvalidInput(fmt::format("verify: unknown suite '{}'", suite));

  bool ok = true;
  for (const auto& report : reports) {
    fmt::print("== {} ==\n", report.suite);
    fmt::print("{:<44} {:>6} {:>12} {:>12}  {}\n", "check", "result", "residual", "tolerance", "detail");
    for (const auto& row : report.rows)
      fmt::print("{:<44} {:>6} {:>12.3e} {:>12.3e}  {}\n", row.name, row.passed ? "PASS" : "FAIL", row.residual,
                 row.tolerance, row.detail);
    ok = ok && report.passed();
  }
  return ok ? 0 : 1;
}

std::string format_bound(const std::function<double()>& f) {
  try {
    return fmt::format("{:.6g}", f());
  } catch (const ab::InvalidInput& e) {
    return fmt::format("n/a ({})", e.what());
  }
}

int cmd_bounds(const std::string& preset_name, const std::string& config_path, std::optional<std::size_t> dim,
               std::optional<std::size_t> horizon, std::optional<double> epsilon, std::optional<double> gamma) {
  const auto it = bound_presets().find(preset_name);
  if (it == bound_presets().end()) {
    std::string names;
    for (const auto& [name, _] : bound_presets()) names += " " + name;
    throw ab::InvalidInput(fmt::format("bounds: unknown preset '{}'; known:{}", preset_name, names));
  }
  BoundPreset p = it->second;
  if (!config_path.empty()) {
    const auto config = ab::load_config(config_path);
    config.validate();
    p.dim = config.dim;
    p.horizon = config.horizon;
    p.confidence = config.confidence();
  }
  if (dim) p.dim = *dim;
  if (horizon) p.horizon = *horizon;
  if (epsilon) p.epsilon = *epsilon;
  if (gamma) p.gamma = *gamma;

  const auto c = ab::BoundConstants::gaussian(p.epsilon);
  const double delta = p.confidence.delta;
  fmt::print("d = {}, T = {}, epsilon = {}, gamma = {}, nu = {}, lambda = {}, S = {}, delta = {}\n", p.dim,
             p.horizon, p.epsilon, p.gamma, p.confidence.nu, p.confidence.lambda, p.confidence.s_bound, delta);
  fmt::print("alpha1 = {}, alpha2 = {}\n", c.alpha1, c.alpha2);
  fmt::print("kappa1 = {:.6g}  kappa2 = {:.6g}\n", c.kappa1, c.kappa2);
  fmt::print("c1 = {:.6g}  c1' = {:.6g}  c2 = {:.6g}  c2' = {:.6g}\n", c.c1, c.c1p, c.c2, c.c2p);
  fmt::print("c_hat1(delta) = {:.6g}  c_hat2(delta) = {:.6g}\n", c.c_hat1(delta), c.c_hat2(delta));
  const auto exact = ab::BoundConstants::gaussian(0.0);
  fmt::print("LinTS bound (exact)            {}\n",
             format_bound([&] { return ab::lints_regret_bound(p.confidence, exact, p.horizon, p.dim); }));
  fmt::print("LinTS bound (approximate)      {}\n",
             format_bound([&] { return ab::lints_regret_bound(p.confidence, c, p.horizon, p.dim); }));
  for (auto type : {ab::AssumptionType::TypeI, ab::AssumptionType::TypeII}) {
    const char* tname = type == ab::AssumptionType::TypeI ? "I" : "II";
    fmt::print("LinBUCB type-{:<2} bound (exact)  {}\n", tname, format_bound([&] {
                 return ab::linbucb_regret_bound(p.confidence, exact, p.gamma, p.horizon, p.dim, type,
                                                 ab::Inference::Exact);
               }));
    fmt::print("LinBUCB type-{:<2} bound (approx) {}\n", tname, format_bound([&] {
                 return ab::linbucb_regret_bound(p.confidence, c, p.gamma, p.horizon, p.dim, type,
                                                 ab::Inference::Approximate);
               }));
  }
  fmt::print("LinBUCB gamma threshold: exact {:.6g}, approximate {:.6g}\n",
             ab::linbucb_gamma_threshold(exact, ab::Inference::Exact),
             ab::linbucb_gamma_threshold(c, ab::Inference::Approximate));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear bandits with approximate posteriors: experiments, adversaries, verifiers and bounds"};
  app.require_subcommand(1);

  std::string config_path, output, grid, suite = "all", preset;
  std::size_t threads = 0;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config and write CSV/SVG outputs");
  run->add_option("config", config_path, "Experiment INI file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Override output_dir");
  auto* run_threads = run->add_option("-j,--threads", threads, "Worker threads (0: all cores)");

  auto* sweep = app.add_subcommand("sweep-gamma", "Rerun the LinBUCB policies over a gamma grid");
  sweep->add_option("config", config_path, "Experiment INI file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--grid", grid, "Comma-separated gamma values (default: [sweep] gamma_grid)");
  sweep->add_option("-o,--output", output, "Override output_dir");
  auto* sweep_threads = sweep->add_option("-j,--threads", threads, "Worker threads (0: all cores)");

  AdversarialArgs adv;
  auto* adversarial = app.add_subcommand("adversarial", "Run policies against the reweighted adversarial posteriors");
  adversarial->add_option("--policy", adv.policy, "lints or linbucb")->check(CLI::IsMember({"lints", "linbucb"}));
  adversarial->add_option("--alpha", adv.alpha, "Divergence order of the budget");
  adversarial->add_option("--epsilon", adv.epsilon, "Divergence budget");
  adversarial->add_option("--horizon", adv.horizon, "Steps per episode");
  adversarial->add_option("--gamma", adv.gamma, "LinBUCB quantile level");
  adversarial->add_option("--r", adv.r, "Reweighting factor (default: midpoint of the feasible interval; 1 = control)");
  adversarial->add_option("--runs", adv.runs, "Number of episodes");
  adversarial->add_option("--seed", adv.seed, "Seed of the first episode");
  adversarial->add_option("--nested-every", adv.nested_every, "Steps between 2-D quadrature checks (0: never)");
  adversarial->add_option("-o,--output", adv.output, "Write traces.csv, aggregate.csv and regret.svg here");

  auto* verify = app.add_subcommand("verify", "Run the numerical verifiers and print a pass/fail table");
  verify->add_option("--suite", suite, "divergence, concentration, quantile-shift or all")
      ->check(CLI::IsMember({"divergence", "concentration", "quantile-shift", "all"}));
  verify->add_option("--seed", seed, "Seed");

  std::string bounds_config;
  std::optional<std::size_t> b_dim, b_horizon;
  std::optional<double> b_eps, b_gamma;
  auto* bounds = app.add_subcommand("bounds", "Print regret-bound values and degraded constants");
  std::string preset_help = "Preset:";
  for (const auto& [name, _] : bound_presets()) preset_help += " " + name;
  bounds->add_option("--preset", preset, preset_help)->required();
  bounds->add_option("--config", bounds_config, "Take d, T and confidence parameters from an experiment INI");
  bounds->add_option("--dim", b_dim, "Override d");
  bounds->add_option("--horizon", b_horizon, "Override T");
  bounds->add_option("--epsilon", b_eps, "Override the divergence budget");
  bounds->add_option("--gamma", b_gamma, "Override the LinBUCB quantile level");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, output, threads, run_threads->count() > 0);
    if (sweep->parsed()) return cmd_sweep(config_path, grid, output, threads, sweep_threads->count() > 0);
    if (adversarial->parsed()) return cmd_adversarial(adv);
    if (verify->parsed()) return cmd_verify(suite, seed);
    if (bounds->parsed()) return cmd_bounds(preset, bounds_config, b_dim, b_horizon, b_eps, b_gamma);
  } catch (const ab::RunFailure& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
