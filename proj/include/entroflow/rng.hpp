// Copyright 2026 The entroflow Authors
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
#include <limits>
#include <random>

namespace entroflow {

/// SplitMix64 (Steele, Lea and Flood 2014). A 64-bit state advanced by the
/// golden-ratio increment and passed through a two-round xor-shift-multiply
/// finalizer. Satisfies UniformRandomBitGenerator so it plugs into <random>.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  static constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// A seed plus a sub-stream number. Two seeds with the same (seed, stream)
/// produce bit-identical draws; distinct streams are decorrelated through
/// mix(seed, stream) = finalize(seed ^ finalize(stream + golden)).
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  constexpr std::uint64_t mixed() const noexcept {
    return SplitMix64::finalize(
        seed ^ SplitMix64::finalize(stream + 0x9E3779B97F4A7C15ULL));
  }

  /// Seed for a named child stream of this one.
  constexpr RngSeed child(std::uint64_t sub) const noexcept {
    return RngSeed{mixed(), sub};
  }

  SplitMix64 engine() const noexcept { return SplitMix64(mixed()); }

  friend constexpr bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Standard normal draws on top of SplitMix64.
class GaussianSource {
 public:
  explicit GaussianSource(RngSeed seed) : engine_(seed.engine()) {}

  double operator()() { return normal_(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::uint64_t bits() { return engine_(); }

 private:
  SplitMix64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace entroflow
