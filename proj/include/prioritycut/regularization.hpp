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

#include <span>

#include "prioritycut/tensor.hpp"

namespace prioritycut {

enum class Reduction {
  kSum,   // squared L2 norm, summed over pixels
  kMean,  // the same sum divided by the pixel count
};

namespace detail {
double consistency_loss_weighted(const PredictionMap& d_mix, const PredictionMap& d_real,
                                 const PredictionMap& d_fake, std::size_t mask_height, std::size_t mask_width,
                                 std::span<const float> weights, Reduction reduction);
}  // namespace detail

/// || d_mix - (m * d_real + (1 - m) * d_fake) ||^2 for a pixel-wise
/// discriminator's outputs on the mixed, real, and fake images.
template <WeightMask M>
double consistency_loss(const PredictionMap& d_mix, const PredictionMap& d_real, const PredictionMap& d_fake,
                        const M& mask, Reduction reduction = Reduction::kSum) {
  return detail::consistency_loss_weighted(d_mix, d_real, d_fake, mask.height(), mask.width(), mask.data(),
                                           reduction);
}

/// Pixel-wise mix of two prediction maps, rounded exactly as image mixing is.
template <WeightMask M>
PredictionMap mix_predictions(const PredictionMap& d_real, const PredictionMap& d_fake, const M& mask);

struct LossWeights {
  double lambda_cons = 1.0;
};

/// l_enc + l_dec + lambda_cons * l_cons.
double discriminator_loss(double l_enc, double l_dec, double l_cons, const LossWeights& weights = {});

}  // namespace prioritycut
