/**
 * Copyright 2026 The prioritycut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the license.
 */
#pragma once

#include <cstdint>

namespace prioritycut {

/// Counter-based generator: draw i is a pure function of (seed, i), so a state
/// can be copied, stored in a manifest, and replayed exactly. The mixing
/// function is SplitMix64.
class RngState {
 public:
  constexpr RngState() = default;
  constexpr explicit RngState(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  /// Independent generator for one stream (e.g. one frame) of a seeded run.
  static constexpr RngState for_stream(std::uint64_t seed, std::uint64_t stream) {
    return RngState(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ull)), 0);
  }

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound). `bound` must be positive.
  constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    // Rejects the low 2^64 mod bound values so the modulo is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  friend constexpr bool operator==(const RngState&, const RngState&) = default;

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace prioritycut
