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

#include "prioritycut/tensor.hpp"

namespace prioritycut {

/// A percentage in [0, 100]. Construction rejects anything else.
class PercentileK {
 public:
  explicit PercentileK(double percent);
  double value() const noexcept { return percent_; }

  /// floor(k * n / 100): how many of `n` pixels a top-k selection takes.
  std::size_t select_count(std::size_t n) const noexcept;

 private:
  double percent_;
};

inline constexpr float kDefaultBackgroundThreshold = 0.9f;

/// 1 where the alpha background mask is at least `tau`, 0 elsewhere.
BinaryMask binarize_background(const AlphaMask& background, float tau = kDefaultBackgroundThreshold);

/// bg + (1 - bg) * occ: background pixels are forced to "not occluded" (1),
/// foreground pixels keep their occlusion value.
AlphaMask foreground_occlusion(const BinaryMask& background, const AlphaMask& occlusion);

/// Zero at the floor(k * H * W / 100) pixels with the smallest values (most
/// occluded), one elsewhere. Equal values are taken in row-major order, so the
/// zero-set for a smaller k is always a subset of the zero-set for a larger k.
BinaryMask topk_occluded_mask(const AlphaMask& foreground_occlusion, PercentileK k);

BinaryMask invert_mask(const BinaryMask& mask);

/// Full derivation from an occlusion map and an alpha background mask:
/// binarize, compose the foreground occlusion, select the top-k.
BinaryMask derive_prioritycut_mask(const AlphaMask& occlusion, const AlphaMask& background, PercentileK k,
                                   float tau = kDefaultBackgroundThreshold);

}  // namespace prioritycut
