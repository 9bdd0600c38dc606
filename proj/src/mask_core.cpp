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

#include "prioritycut/mask_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "prioritycut/error.hpp"

namespace prioritycut {

PercentileK::PercentileK(double percent) : percent_(percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw ArgumentError("k must be a percentage in [0, 100], got " + std::to_string(percent));
  }
}

std::size_t PercentileK::select_count(std::size_t n) const noexcept {
  const double count = std::floor(percent_ * static_cast<double>(n) / 100.0);
  return std::min(n, static_cast<std::size_t>(count));
}

BinaryMask binarize_background(const AlphaMask& background, float tau) {
  if (!(tau >= 0.0f && tau <= 1.0f)) {
    throw ArgumentError("tau must be in [0, 1], got " + std::to_string(tau));
  }
  std::vector<float> out(background.size());
  const auto in = background.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[i] >= tau ? 1.0f : 0.0f;
  return BinaryMask(background.height(), background.width(), std::move(out));
}

AlphaMask foreground_occlusion(const BinaryMask& background, const AlphaMask& occlusion) {
  if (!background.same_shape(occlusion)) {
    throw ShapeError("foreground_occlusion: background " + shape_string(background.height(), background.width()) +
                     " vs occlusion " + shape_string(occlusion.height(), occlusion.width()));
  }
  std::vector<float> out(occlusion.size());
  const auto bg = background.data();
  const auto occ = occlusion.data();
  // Exact for binary bg: yields 1 + 0 * occ = 1 or 0 + 1 * occ = occ.
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bg[i] + (1.0f - bg[i]) * occ[i];
  return AlphaMask(occlusion.height(), occlusion.width(), std::move(out));
}

BinaryMask topk_occluded_mask(const AlphaMask& foreground_occlusion, PercentileK k) {
  const std::size_t n = foreground_occlusion.size();
  const std::size_t n_sel = k.select_count(n);
  std::vector<float> out(n, 1.0f);
  if (n_sel == n) {
    std::fill(out.begin(), out.end(), 0.0f);
  } else if (n_sel > 0) {
    // Values are in [0, 1], so the IEEE bit pattern of a non-negative float
    // orders like the value itself. Find the n_sel-th smallest pattern, then
    // take everything below it and the first ties in row-major order.
    const auto values = foreground_occlusion.data();
    std::vector<std::uint32_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = std::bit_cast<std::uint32_t>(values[i]) & 0x7FFFFFFFu;
    // Radix select: bucket by the high 16 bits (at most 0x3F80, from 1.0f),
    // then order only the bucket holding the n_sel-th smallest pattern.
    std::vector<std::uint32_t> histogram(0x3F81, 0);
    for (std::uint32_t b : bits) ++histogram[b >> 16];
    std::size_t bucket = 0, before = 0;
    while (before + histogram[bucket] < n_sel) before += histogram[bucket++];
    std::vector<std::uint32_t> candidates;
    candidates.reserve(histogram[bucket]);
    for (std::uint32_t b : bits)
      if ((b >> 16) == bucket) candidates.push_back(b);
    const auto nth = candidates.begin() + static_cast<std::ptrdiff_t>(n_sel - before - 1);
    std::nth_element(candidates.begin(), nth, candidates.end());
    const std::uint32_t cutoff = *nth;
    std::size_t below = 0;
    for (std::size_t i = 0; i < n; ++i) below += bits[i] < cutoff;
    std::size_t ties = n_sel - below;
    for (std::size_t i = 0; i < n; ++i) {
      const bool tie = bits[i] == cutoff && ties > 0;
      ties -= tie;
      out[i] = (bits[i] < cutoff || tie) ? 0.0f : 1.0f;
    }
  }
  return BinaryMask(foreground_occlusion.height(), foreground_occlusion.width(), std::move(out));
}

BinaryMask invert_mask(const BinaryMask& mask) {
  std::vector<float> out(mask.size());
  const auto in = mask.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0f - in[i];
  return BinaryMask(mask.height(), mask.width(), std::move(out));
}

BinaryMask derive_prioritycut_mask(const AlphaMask& occlusion, const AlphaMask& background, PercentileK k,
                                   float tau) {
  return topk_occluded_mask(foreground_occlusion(binarize_background(background, tau), occlusion), k);
}

}  // namespace prioritycut
