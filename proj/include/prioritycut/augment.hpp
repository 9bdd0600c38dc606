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

#include <cstddef>
#include <span>

#include <type_traits>

#include "prioritycut/mask_core.hpp"
#include "prioritycut/rng.hpp"
#include "prioritycut/tensor.hpp"

namespace prioritycut {

namespace detail {
ImageTensor mix_weighted(const ImageTensor& x, const ImageTensor& x_prime, std::size_t mask_height,
                         std::size_t mask_width, std::span<const float> weights, bool binary = false);
}  // namespace detail

/// m * x + (1 - m) * x', with the single-channel mask broadcast over channels.
template <WeightMask M>
ImageTensor mix(const ImageTensor& x, const ImageTensor& x_prime, const M& mask) {
  return detail::mix_weighted(x, x_prime, mask.height(), mask.width(), mask.data(),
                              std::is_same_v<M, BinaryMask>);
}

struct AugmentedFrame {
  ImageTensor image;
  BinaryMask mask;
};

/// Mixes the driving frame with its reconstruction under the PriorityCut mask:
/// reconstructed pixels on the top-k most occluded foreground, driving pixels
/// everywhere else.
AugmentedFrame prioritycut_augment(const ImageTensor& driving, const ImageTensor& generated,
                                   const AlphaMask& occlusion, const AlphaMask& background, PercentileK k,
                                   float tau = kDefaultBackgroundThreshold);

/// One rectangle of zeros, nominal size round(w*sqrt(1-lambda)) x
/// round(h*sqrt(1-lambda)), centred uniformly over the image and clipped at the
/// borders. Draws the centre column, then the centre row.
BinaryMask cutmix_mask(std::size_t height, std::size_t width, double lambda, RngState& rng);

/// Zeros on one side x side square placed uniformly among the positions that
/// fit inside the image. Draws the left column, then the top row; an axis no
/// longer than the side draws nothing and the square covers it fully.
BinaryMask cutout_mask(std::size_t height, std::size_t width, std::size_t side, RngState& rng);

/// Sets the square chosen by cutout_mask to `fill` in every channel.
ImageTensor cutout(const ImageTensor& x, std::size_t side, RngState& rng, float fill = 0.0f);

/// Fills x with `fill` wherever mask is 0.
ImageTensor fill_where_zero(const ImageTensor& x, const BinaryMask& mask, float fill);

ImageTensor mixup(const ImageTensor& x, const ImageTensor& x_prime, double lambda);

inline constexpr double kDefaultKMin = 0.0;
inline constexpr double kDefaultKMax = 50.0;

/// k uniform on (k_min, k_max]; returns k_min when the bounds coincide.
PercentileK sample_k(RngState& rng, double k_min = kDefaultKMin, double k_max = kDefaultKMax);

class AugmentSchedule {
 public:
  static constexpr std::size_t kDefaultWarmupEpochs = 10;
  static constexpr double kDefaultMaxProbability = 0.5;

  AugmentSchedule() = default;
  AugmentSchedule(std::size_t warmup_epochs, double max_probability = kDefaultMaxProbability);

  std::size_t warmup_epochs() const noexcept { return warmup_epochs_; }
  double max_probability() const noexcept { return max_probability_; }

 private:
  std::size_t warmup_epochs_ = kDefaultWarmupEpochs;
  double max_probability_ = kDefaultMaxProbability;
};

/// Linear ramp from 0 at epoch 0 to max_probability at warmup_epochs, flat after.
double augmentation_probability(std::size_t epoch, const AugmentSchedule& schedule);

/// Bernoulli draw with success probability p.
bool draw_gate(RngState& rng, double p);

}  // namespace prioritycut
