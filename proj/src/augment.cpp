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

#include "prioritycut/augment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "prioritycut/blend.hpp"
#include "prioritycut/error.hpp"

namespace prioritycut {

namespace {

void require_same_image_shape(const ImageTensor& a, const ImageTensor& b, const char* op) {
  if (a.height() != b.height() || a.width() != b.width() || a.channels() != b.channels()) {
    throw ShapeError(std::string(op) + ": " + shape_string(a.height(), a.width(), a.channels()) + " vs " +
                     shape_string(b.height(), b.width(), b.channels()));
  }
}

void require_unit_ratio(double lambda, const char* op) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ArgumentError(std::string(op) + ": lambda must be in [0, 1], got " + std::to_string(lambda));
  }
}

// Rectangle [y0, y1) x [x0, x1) of zeros in an otherwise all-ones mask.
BinaryMask rectangle_mask(std::size_t height, std::size_t width, std::size_t y0, std::size_t y1, std::size_t x0,
                          std::size_t x1) {
  std::vector<float> out(height * width, 1.0f);
  for (std::size_t y = y0; y < y1; ++y) {
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(y * width + x0),
              out.begin() + static_cast<std::ptrdiff_t>(y * width + x1), 0.0f);
  }
  return BinaryMask(height, width, std::move(out));
}

}  // namespace

namespace detail {

ImageTensor mix_weighted(const ImageTensor& x, const ImageTensor& x_prime, std::size_t mask_height,
                         std::size_t mask_width, std::span<const float> weights, bool binary) {
  require_same_image_shape(x, x_prime, "mix");
  if (x.height() != mask_height || x.width() != mask_width) {
    throw ShapeError("mix: image " + shape_string(x.height(), x.width()) + " vs mask " +
                     shape_string(mask_height, mask_width));
  }
  const std::size_t channels = x.channels();
  const auto a = x.data();
  const auto b = x_prime.data();
  std::vector<float> out(x.size());
  if (binary) {
    // blend() returns a or b exactly at m = 1 or 0; select without the arithmetic.
    for (std::size_t p = 0; p < weights.size(); ++p) {
      const bool keep = weights[p] != 0.0f;
      for (std::size_t c = 0; c < channels; ++c) {
        const std::size_t i = p * channels + c;
        out[i] = keep ? a[i] : b[i];
      }
    }
    return ImageTensor(x.height(), x.width(), channels, std::move(out));
  }
  for (std::size_t p = 0; p < weights.size(); ++p) {
    const float m = weights[p];
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t i = p * channels + c;
      out[i] = blend(m, a[i], b[i]);
    }
  }
  return ImageTensor(x.height(), x.width(), channels, std::move(out));
}

}  // namespace detail

AugmentedFrame prioritycut_augment(const ImageTensor& driving, const ImageTensor& generated,
                                   const AlphaMask& occlusion, const AlphaMask& background, PercentileK k,
                                   float tau) {
  require_same_image_shape(driving, generated, "prioritycut_augment");
  if (driving.height() != occlusion.height() || driving.width() != occlusion.width()) {
    throw ShapeError("prioritycut_augment: frame " + shape_string(driving.height(), driving.width()) +
                     " vs occlusion " + shape_string(occlusion.height(), occlusion.width()));
  }
  BinaryMask mask = derive_prioritycut_mask(occlusion, background, k, tau);
  ImageTensor image = mix(driving, generated, mask);
  return {std::move(image), std::move(mask)};
}

BinaryMask cutmix_mask(std::size_t height, std::size_t width, double lambda, RngState& rng) {
  if (height == 0 || width == 0) throw ArgumentError("cutmix_mask: empty image");
  require_unit_ratio(lambda, "cutmix_mask");
  const double cut_ratio = std::sqrt(1.0 - lambda);
  const auto cut_w = static_cast<std::int64_t>(std::lround(static_cast<double>(width) * cut_ratio));
  const auto cut_h = static_cast<std::int64_t>(std::lround(static_cast<double>(height) * cut_ratio));
  const auto cx = static_cast<std::int64_t>(rng.uniform_below(width));
  const auto cy = static_cast<std::int64_t>(rng.uniform_below(height));

  const auto w = static_cast<std::int64_t>(width);
  const auto h = static_cast<std::int64_t>(height);
  const std::int64_t x0 = std::clamp<std::int64_t>(cx - cut_w / 2, 0, w);
  const std::int64_t x1 = std::clamp<std::int64_t>(cx - cut_w / 2 + cut_w, 0, w);
  const std::int64_t y0 = std::clamp<std::int64_t>(cy - cut_h / 2, 0, h);
  const std::int64_t y1 = std::clamp<std::int64_t>(cy - cut_h / 2 + cut_h, 0, h);
  return rectangle_mask(height, width, static_cast<std::size_t>(y0), static_cast<std::size_t>(y1),
                        static_cast<std::size_t>(x0), static_cast<std::size_t>(x1));
}

BinaryMask cutout_mask(std::size_t height, std::size_t width, std::size_t side, RngState& rng) {
  if (side < 1) throw ArgumentError("cutout: side must be positive");
  // Along an axis shorter than the side the square is clipped to the frame.
  const std::size_t x0 = side < width ? rng.uniform_below(width - side + 1) : 0;
  const std::size_t y0 = side < height ? rng.uniform_below(height - side + 1) : 0;
  return rectangle_mask(height, width, y0, std::min(height, y0 + side), x0, std::min(width, x0 + side));
}

ImageTensor fill_where_zero(const ImageTensor& x, const BinaryMask& mask, float fill) {
  if (x.height() != mask.height() || x.width() != mask.width()) {
    throw ShapeError("fill_where_zero: image " + shape_string(x.height(), x.width()) + " vs mask " +
                     shape_string(mask.height(), mask.width()));
  }
  std::vector<float> out(x.data().begin(), x.data().end());
  const std::size_t channels = x.channels();
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (mask[p] == 0.0f) std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(p * channels), channels, fill);
  }
  return ImageTensor(x.height(), x.width(), channels, std::move(out));
}

ImageTensor cutout(const ImageTensor& x, std::size_t side, RngState& rng, float fill) {
  return fill_where_zero(x, cutout_mask(x.height(), x.width(), side, rng), fill);
}

ImageTensor mixup(const ImageTensor& x, const ImageTensor& x_prime, double lambda) {
  require_same_image_shape(x, x_prime, "mixup");
  require_unit_ratio(lambda, "mixup");
  const auto m = static_cast<float>(lambda);
  const auto a = x.data();
  const auto b = x_prime.data();
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::blend(m, a[i], b[i]);
  return ImageTensor(x.height(), x.width(), x.channels(), std::move(out));
}

PercentileK sample_k(RngState& rng, double k_min, double k_max) {
  if (!(0.0 <= k_min && k_min <= k_max && k_max <= 100.0)) {
    throw ArgumentError("sample_k: need 0 <= k_min <= k_max <= 100, got [" + std::to_string(k_min) + ", " +
                        std::to_string(k_max) + "]");
  }
  const double u = rng.uniform01();
  return PercentileK(std::clamp(k_max - u * (k_max - k_min), k_min, k_max));
}

AugmentSchedule::AugmentSchedule(std::size_t warmup_epochs, double max_probability)
    : warmup_epochs_(warmup_epochs), max_probability_(max_probability) {
  if (warmup_epochs < 1) throw ArgumentError("AugmentSchedule: warmup_epochs must be >= 1");
  if (!(max_probability >= 0.0 && max_probability <= 1.0)) {
    throw ArgumentError("AugmentSchedule: max_probability must be in [0, 1]");
  }
}

double augmentation_probability(std::size_t epoch, const AugmentSchedule& schedule) {
  const double ramp =
      std::min(1.0, static_cast<double>(epoch) / static_cast<double>(schedule.warmup_epochs()));
  return std::clamp(schedule.max_probability() * ramp, 0.0, schedule.max_probability());
}

bool draw_gate(RngState& rng, double p) { return rng.uniform01() < p; }

}  // namespace prioritycut
