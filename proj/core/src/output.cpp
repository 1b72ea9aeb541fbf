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


#include "approxbandit/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "approxbandit/errors.hpp"

namespace approxbandit {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::size_t kMaxPoints = 1000;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Round to 1, 2 or 5 times a power of ten.
double nice_step(double range, int ticks) {
  const double raw = range / ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0) * mag;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

template <class Write>
void write_file(const std::filesystem::path& path, Write write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(fmt::format("output: cannot open '{}'", path.string()));
  write(out);
  if (!out) throw InvalidInput(fmt::format("output: write to '{}' failed", path.string()));
}

}  // namespace

void write_traces_csv(const ExperimentResult& result, std::ostream& out) {
  out << "step,instant_regret,cum_regret,policy,seed\n";
  for (const auto& pr : result.policies) {
    for (std::size_t run = 0; run < pr.runs.size(); ++run) {
      const auto& trace = pr.runs[run];
      for (std::size_t t = 0; t < trace.size(); ++t)
        fmt::print(out, "{},{},{},{},{}\n", t + 1, trace.instantaneous[t], trace.cumulative[t], pr.policy.name,
                   result.seeds[run]);
    }
  }
}

void write_aggregate_csv(const ExperimentResult& result, std::ostream& out) {
  out << "step,mean,stderr,policy\n";
  for (const auto& pr : result.policies) {
    const auto& agg = pr.aggregate;
    for (std::size_t t = 0; t < agg.mean_cumulative.size(); ++t)
      fmt::print(out, "{},{},{},{}\n", t + 1, agg.mean_cumulative[t], agg.stderr_cumulative[t], pr.policy.name);
  }
}

void write_regret_svg(const ExperimentResult& result, std::ostream& out, const std::string& title) {
  std::size_t steps = 0;
  double ymax = 0.0;
  for (const auto& pr : result.policies) {
    const auto& agg = pr.aggregate;
    steps = std::max(steps, agg.mean_cumulative.size());
    for (std::size_t t = 0; t < agg.mean_cumulative.size(); ++t)
      ymax = std::max(ymax, agg.mean_cumulative[t] + agg.stderr_cumulative[t]);
  }
  const double xmax = std::max<double>(static_cast<double>(steps), 1.0);
  if (!(ymax > 0.0)) ymax = 1.0;
  const double ystep = nice_step(ymax, 5);
  ymax = std::ceil(ymax / ystep) * ystep;
  const double xstep = nice_step(xmax, 5);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + pw * x / xmax; };
  const auto py = [&](double y) { return kTop + ph * (1.0 - y / ymax); };

  fmt::print(out,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} "
             "{:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
             kWidth, kHeight, kWidth, kHeight);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    fmt::print(out, "<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
               kLeft + pw / 2, xml_escape(title));

  // Axes, grid and ticks.
  for (double y = 0.0; y <= ymax + 1e-9 * ymax; y += ystep) {
    fmt::print(out, "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#e0e0e0\"/>\n", kLeft,
               py(y), kLeft + pw, py(y));
    fmt::print(out, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6, py(y) + 4, y);
  }
  for (double x = 0.0; x <= xmax + 1e-9 * xmax; x += xstep)
    fmt::print(out, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px(x), kTop + ph + 18, x);
  fmt::print(out, "<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
             kLeft, kTop, kLeft, kTop + ph, kLeft + pw, kTop + ph);
  fmt::print(out, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">step</text>\n", kLeft + pw / 2,
             kHeight - 12);
  fmt::print(out,
             "<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">cumulative "
             "regret</text>\n",
             kTop + ph / 2, kTop + ph / 2);

  std::size_t colour = 0;
  for (const auto& pr : result.policies) {
    const auto& agg = pr.aggregate;
    const char* c = kPalette[colour++ % std::size(kPalette)];
    const std::size_t n = agg.mean_cumulative.size();
    if (n > 0) {
      const std::size_t stride = (n + kMaxPoints - 1) / kMaxPoints;
      std::vector<std::size_t> idx;
      for (std::size_t t = 0; t < n; t += stride) idx.push_back(t);
      if (idx.back() != n - 1) idx.push_back(n - 1);

      std::string band;
      for (std::size_t t : idx)
        band += fmt::format("{:.2f},{:.2f} ", px(t + 1.0), py(agg.mean_cumulative[t] + agg.stderr_cumulative[t]));
      for (auto it = idx.rbegin(); it != idx.rend(); ++it)
        band += fmt::format("{:.2f},{:.2f} ", px(*it + 1.0),
                            py(std::max(agg.mean_cumulative[*it] - agg.stderr_cumulative[*it], 0.0)));
      band.pop_back();
      fmt::print(out, "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.2\" stroke=\"none\"/>\n", band, c);

      std::string line;
      for (std::size_t t : idx) line += fmt::format("{:.2f},{:.2f} ", px(t + 1.0), py(agg.mean_cumulative[t]));
      line.pop_back();
      fmt::print(out, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", line, c);
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(colour - 1);
    fmt::print(out, "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
               kLeft + pw + 12, ly, kLeft + pw + 32, ly, c);
    fmt::print(out, "<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kLeft + pw + 38, ly + 4,
               xml_escape(pr.policy.name));
  }
  out << "</svg>\n";
}

std::string manifest(const ExperimentResult& result) {
  std::string seeds;
  for (std::size_t i = 0; i < result.seeds.size(); ++i) seeds += fmt::format("{}{}", i ? "," : "", result.seeds[i]);
  return serialize(result.config) + fmt::format("\n[manifest]\nseeds = {}\npaired_streams = true\n", seeds);
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  out << "gamma,mean_final,stderr_final,policy\n";
  for (const auto& row : sweep.rows)
    fmt::print(out, "{},{},{},{}\n", row.gamma, row.mean_final, row.stderr_final, row.policy);
}

OutputFiles emit_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput(fmt::format("output: cannot create '{}': {}", dir.string(), ec.message()));
  OutputFiles files{dir / "traces.csv", dir / "aggregate.csv", dir / "regret.svg", dir / "manifest.ini"};
  write_file(files.traces, [&](std::ostream& o) { write_traces_csv(result, o); });
  write_file(files.aggregate, [&](std::ostream& o) { write_aggregate_csv(result, o); });
  write_file(files.plot, [&](std::ostream& o) {
    write_regret_svg(result, o,
                     fmt::format("{} d={} K={} ({} runs)", to_string(result.config.family), result.config.dim,
                                 result.config.n_arms, result.seeds.size()));
  });
  write_file(files.manifest, [&](std::ostream& o) { o << manifest(result); });
  return files;
}

}  // namespace approxbandit
