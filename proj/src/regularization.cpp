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

#include "prioritycut/regularization.hpp"

#include <cmath>
#include <string>

#include "prioritycut/blend.hpp"
#include "prioritycut/error.hpp"

namespace prioritycut {

namespace {

void require_shape(const detail::Plane& p, std::size_t h, std::size_t w, const char* what) {
  if (p.height() != h || p.width() != w) {
    throw ShapeError(std::string("consistency_loss: ") + what + " is " + shape_string(p.height(), p.width()) +
                     ", mask is " + shape_string(h, w));
  }
}

}  // namespace

namespace detail {

double consistency_loss_weighted(const PredictionMap& d_mix, const PredictionMap& d_real,
                                 const PredictionMap& d_fake, std::size_t mask_height, std::size_t mask_width,
                                 std::span<const float> weights, Reduction reduction) {
  require_shape(d_mix, mask_height, mask_width, "d_mix");
  require_shape(d_real, mask_height, mask_width, "d_real");
  require_shape(d_fake, mask_height, mask_width, "d_fake");
  const auto mixed = d_mix.data();
  const auto real = d_real.data();
  const auto fake = d_fake.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double diff = static_cast<double>(mixed[i]) - blend(weights[i], real[i], fake[i]);
    sum += diff * diff;
  }
  if (reduction == Reduction::kMean && !weights.empty()) sum /= static_cast<double>(weights.size());
  return sum;
}

}  // namespace detail

template <WeightMask M>
PredictionMap mix_predictions(const PredictionMap& d_real, const PredictionMap& d_fake, const M& mask) {
  require_shape(d_real, mask.height(), mask.width(), "d_real");
  require_shape(d_fake, mask.height(), mask.width(), "d_fake");
  std::vector<float> out(mask.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::blend(mask[i], d_real[i], d_fake[i]);
  return PredictionMap(mask.height(), mask.width(), std::move(out));
}

template PredictionMap mix_predictions<AlphaMask>(const PredictionMap&, const PredictionMap&, const AlphaMask&);
template PredictionMap mix_predictions<BinaryMask>(const PredictionMap&, const PredictionMap&, const BinaryMask&);

double discriminator_loss(double l_enc, double l_dec, double l_cons, const LossWeights& weights) {
  if (!std::isfinite(l_enc) || !std::isfinite(l_dec) || !std::isfinite(l_cons) ||
      !std::isfinite(weights.lambda_cons)) {
    throw ArgumentError("discriminator_loss: non-finite input");
  }
  if (weights.lambda_cons < 0.0) throw ArgumentError("discriminator_loss: lambda_cons must be >= 0");
  return l_enc + l_dec + weights.lambda_cons * l_cons;
}

}  // namespace prioritycut
