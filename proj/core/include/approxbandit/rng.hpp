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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace approxbandit {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives a seed from a base seed and a path of stream tags. Distinct tag
/// paths give statistically independent engines; the mapping is stable
/// across platforms and processes.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept;

Engine make_engine(std::uint64_t base, std::initializer_list<std::uint64_t> tags = {});

/// Standard normal draw (portable ziggurat, no cached state between calls).
double standard_normal(Engine& rng);

/// Uniform draw on [0, 1).
double uniform01(Engine& rng);

/// Stream tags shared by the run loop and the environment.
namespace stream {
inline constexpr std::uint64_t kArms = 0xA5A5'0001;
inline constexpr std::uint64_t kNoise = 0xA5A5'0002;
inline constexpr std::uint64_t kPolicy = 0xA5A5'0003;
inline constexpr std::uint64_t kInstance = 0xA5A5'0004;
inline constexpr std::uint64_t kAdversary = 0xA5A5'0005;
inline constexpr std::uint64_t kCertify = 0xA5A5'0006;
}  // namespace stream

}  // namespace approxbandit
