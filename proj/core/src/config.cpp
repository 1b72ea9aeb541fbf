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


#include "approxbandit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "approxbandit/errors.hpp"

namespace approxbandit {

namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kPolicyPrefix = "policy.";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty())
    throw InvalidInput(fmt::format("config: {} = '{}' is not a real number", key, text));
  return value;
}

std::uint64_t to_uint(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty())
    throw InvalidInput(fmt::format("config: {} = '{}' is not a non-negative integer", key, text));
  return value;
}

Family to_family(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "p1") return Family::P1;
  if (t == "p2") return Family::P2;
  if (t == "p3") return Family::P3;
  throw InvalidInput(fmt::format("config: family must be P1, P2 or P3, got '{}'", text));
}

ArmScaling to_scaling(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "ball") return ArmScaling::ProjectToBall;
  if (t == "sphere") return ArmScaling::NormalizeToSphere;
  throw InvalidInput(fmt::format("config: arm_scaling must be ball or sphere, got '{}'", text));
}

PolicyKind to_kind(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "lints") return PolicyKind::LinTS;
  if (t == "linbucb") return PolicyKind::LinBUCB;
  throw InvalidInput(fmt::format("config: kind must be lints or linbucb, got '{}'", text));
}

Inference to_inference(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "exact") return Inference::Exact;
  if (t == "approx" || t == "approximate") return Inference::Approximate;
  throw InvalidInput(fmt::format("config: inference must be exact or approx, got '{}'", text));
}

ApproxMode to_approx_mode(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "cov") return ApproxMode::CovOnly;
  if (t == "mean-and-cov") return ApproxMode::MeanAndCov;
  throw InvalidInput(fmt::format("config: approx_mode must be cov or mean-and-cov, got '{}'", text));
}

void reject_unknown(const pt::ptree& section, const std::string& name, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : section) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidInput(fmt::format("config: unknown key '{}' in [{}]", key, name));
    if (!value.empty()) throw InvalidInput(fmt::format("config: nested key '{}' in [{}]", key, name));
  }
}

std::string real_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += fmt::format("{}{}", i ? "," : "", values[i]);
  return out;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real("list", item));
  if (out.empty()) throw InvalidInput("config: empty list");
  return out;
}

BanditInstance ExperimentConfig::instance() const {
  return BanditInstance::make(family, dim, n_arms, noise_sd, p3_seed);
}

ConfidenceParams ExperimentConfig::confidence() const {
  ConfidenceParams params;
  params.nu = nu;
  params.lambda = lambda;
  params.delta = delta;
  params.s_bound = s_bound ? *s_bound : instance().theta_norm();
  return params;
}

PolicyConfig ExperimentConfig::resolved(const PolicyConfig& policy) const {
  PolicyConfig out = policy;
  out.confidence = confidence();
  out.horizon = horizon;
  return out;
}

std::vector<std::string> ExperimentConfig::validate() const {
  if (family == Family::Custom) throw InvalidInput("config: custom instances cannot be configured from a file");
  if (dim == 0) throw InvalidInput("config: dim must be positive");
  if (n_arms == 0) throw InvalidInput("config: n_arms must be positive");
  if (horizon == 0) throw InvalidInput("config: horizon must be positive");
  if (n_runs == 0) throw InvalidInput("config: n_runs must be positive");
  if (!(noise_sd >= 0.0 && std::isfinite(noise_sd))) throw InvalidInput("config: noise_sd must be finite and >= 0");
  if (s_bound && !(*s_bound > 0.0 && std::isfinite(*s_bound)))
    throw InvalidInput("config: s_bound must be positive");
  if (output_dir.empty()) throw InvalidInput("config: output_dir is empty");
  for (double g : gamma_grid)
    if (!(g > 0.0 && g < 1.0)) throw InvalidInput(fmt::format("config: gamma_grid entry {} outside (0, 1)", g));

  std::vector<std::string> warnings;
  const auto params = confidence();
  params.validate();
  if (s_bound && *s_bound < instance().theta_norm())
    warnings.push_back(fmt::format("s_bound = {} is below |theta*| = {}", *s_bound, instance().theta_norm()));
  if (policies.empty()) throw InvalidInput("config: no [policy.NAME] section");
  std::set<std::string> names;
  for (const auto& p : policies) {
    if (p.name.empty()) throw InvalidInput("config: policy without a name");
    if (!names.insert(p.name).second) throw InvalidInput(fmt::format("config: duplicate policy '{}'", p.name));
    try {
      for (auto& w : resolved(p).validate()) warnings.push_back(fmt::format("policy {}: {}", p.name, w));
    } catch (const InvalidInput& e) {
      throw InvalidInput(fmt::format("config: policy {}: {}", p.name, e.what()));
    }
  }
  return warnings;
}

std::vector<std::string> ExperimentConfig::validate_for_output() const {
  auto warnings = validate();
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec)
    throw InvalidInput(fmt::format("config: cannot create output_dir '{}': {}", output_dir.string(), ec.message()));
  const auto probe = output_dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "probe")) throw InvalidInput(fmt::format("config: output_dir '{}' is not writable", output_dir.string()));
  }
  std::filesystem::remove(probe, ec);
  return warnings;
}

namespace {

// Drops trailing "# ..." or "; ..." comments that follow whitespace.
std::string strip_inline_comments(std::istream& in) {
  std::string out, line;
  while (std::getline(in, line)) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    std::istringstream cleaned(strip_inline_comments(in));
    pt::read_ini(cleaned, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidInput(fmt::format("config: {}", e.what()));
  }

  ExperimentConfig config;
  config.output_dir = "out";
  std::optional<std::string> manifest_seeds;
  for (const auto& [section, body] : tree) {
    const auto get = [&](const char* key) -> std::optional<std::string> {
      const auto it = body.find(key);
      if (it == body.not_found()) return std::nullopt;
      return trim(it->second.data());
    };
    if (section == "experiment") {
      reject_unknown(body, section,
                     {"family", "dim", "n_arms", "horizon", "n_runs", "base_seed", "p3_seed", "noise_sd",
                      "arm_scaling", "output_dir", "threads"});
      if (auto v = get("family")) config.family = to_family(*v);
      if (auto v = get("dim")) config.dim = to_uint("dim", *v);
      if (auto v = get("n_arms")) config.n_arms = to_uint("n_arms", *v);
      if (auto v = get("horizon")) config.horizon = to_uint("horizon", *v);
      if (auto v = get("n_runs")) config.n_runs = to_uint("n_runs", *v);
      if (auto v = get("base_seed")) config.base_seed = to_uint("base_seed", *v);
      if (auto v = get("p3_seed")) config.p3_seed = to_uint("p3_seed", *v);
      if (auto v = get("noise_sd")) config.noise_sd = to_real("noise_sd", *v);
      if (auto v = get("arm_scaling")) config.arm_scaling = to_scaling(*v);
      if (auto v = get("output_dir")) config.output_dir = *v;
      if (auto v = get("threads")) config.threads = to_uint("threads", *v);
    } else if (section == "confidence") {
      reject_unknown(body, section, {"nu", "lambda", "s_bound", "delta"});
      if (auto v = get("nu")) config.nu = to_real("nu", *v);
      if (auto v = get("lambda")) config.lambda = to_real("lambda", *v);
      if (auto v = get("delta")) config.delta = to_real("delta", *v);
      if (auto v = get("s_bound")) {
        if (lower(*v) == "auto") config.s_bound.reset();
        else config.s_bound = to_real("s_bound", *v);
      }
    } else if (section == "sweep") {
      reject_unknown(body, section, {"gamma_grid"});
      if (auto v = get("gamma_grid")) config.gamma_grid = parse_real_list(*v);
    } else if (section.rfind(kPolicyPrefix, 0) == 0) {
      reject_unknown(body, section, {"kind", "inference", "gamma", "scale", "approx_mode"});
      PolicyConfig p;
      p.name = section.substr(kPolicyPrefix.size());
      const auto kind = get("kind");
      if (!kind) throw InvalidInput(fmt::format("config: [{}] needs kind", section));
      p.kind = to_kind(*kind);
      if (auto v = get("inference")) p.inference = to_inference(*v);
      if (auto v = get("gamma")) p.gamma = to_real("gamma", *v);
      if (auto v = get("approx_mode")) p.approx_mode = to_approx_mode(*v);
      if (auto v = get("scale")) {
        if (lower(*v) == "theory") p.posterior_scale.reset();
        else p.posterior_scale = to_real("scale", *v);
      }
      config.policies.push_back(std::move(p));
    } else if (section == "manifest") {
      reject_unknown(body, section, {"seeds", "paired_streams"});
      manifest_seeds = get("seeds");
    } else {
      throw InvalidInput(fmt::format("config: unknown section [{}]", section));
    }
  }
  if (manifest_seeds) {
    std::string expected;
    for (std::size_t i = 0; i < config.n_runs; ++i) expected += fmt::format("{}{}", i ? "," : "", config.run_seed(i));
    if (*manifest_seeds != expected)
      throw InvalidInput(fmt::format("config: manifest seeds '{}' do not match base_seed/n_runs", *manifest_seeds));
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("config: cannot open '{}'", path.string()));
  return parse_config(in);
}

std::string serialize(const ExperimentConfig& config) {
  std::string out;
  out += "[experiment]\n";
  out += fmt::format("family = {}\n", to_string(config.family));
  out += fmt::format("dim = {}\nn_arms = {}\nhorizon = {}\nn_runs = {}\n", config.dim, config.n_arms, config.horizon,
                     config.n_runs);
  out += fmt::format("base_seed = {}\np3_seed = {}\n", config.base_seed, config.p3_seed);
  out += fmt::format("noise_sd = {}\narm_scaling = {}\n", config.noise_sd, to_string(config.arm_scaling));
  out += fmt::format("output_dir = {}\nthreads = {}\n", config.output_dir.string(), config.threads);
  out += "\n[confidence]\n";
  out += fmt::format("nu = {}\nlambda = {}\n", config.nu, config.lambda);
  out += config.s_bound ? fmt::format("s_bound = {}\n", *config.s_bound) : std::string("s_bound = auto\n");
  out += fmt::format("delta = {}\n", config.delta);
  if (!config.gamma_grid.empty()) out += fmt::format("\n[sweep]\ngamma_grid = {}\n", real_list(config.gamma_grid));
  for (const auto& p : config.policies) {
    out += fmt::format("\n[policy.{}]\nkind = {}\ninference = {}\n", p.name, to_string(p.kind), to_string(p.inference));
    out += fmt::format("gamma = {}\n", p.gamma);
    out += p.posterior_scale ? fmt::format("scale = {}\n", *p.posterior_scale) : std::string("scale = theory\n");
    out += fmt::format("approx_mode = {}\n", to_string(p.approx_mode));
  }
  return out;
}

}  // namespace approxbandit
