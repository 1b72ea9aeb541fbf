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

#include "approxbandit/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace approxbandit {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = splitmix64(base);
  for (const auto tag : tags) h = splitmix64(h ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
  return h;
}

Engine make_engine(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  return Engine{derive_seed(base, tags)};
}

double standard_normal(Engine& rng) {
  boost::random::normal_distribution<double> dist;
  return dist(rng);
}

double uniform01(Engine& rng) {
  boost::random::uniform_01<double> dist;
  return dist(rng);
}

}  // namespace approxbandit
