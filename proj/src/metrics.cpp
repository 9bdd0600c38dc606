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

#include "prioritycut/metrics.hpp"

#include <cmath>
#include <string>

#include "prioritycut/error.hpp"

namespace prioritycut::metrics {

namespace {

void require_same_shape(const ImageTensor& a, const ImageTensor& b, const char* op) {
  if (a.height() != b.height() || a.width() != b.width() || a.channels() != b.channels()) {
    throw ShapeError(std::string(op) + ": " + shape_string(a.height(), a.width(), a.channels()) + " vs " +
                     shape_string(b.height(), b.width(), b.channels()));
  }
}

double psnr_from_mse(double mse, double dynamic_range) {
  if (!(dynamic_range > 0.0)) throw ArgumentError("psnr: dynamic range must be positive");
  if (mse == 0.0) return kPsnrInfinity;
  return 10.0 * std::log10(dynamic_range * dynamic_range / mse);
}

void require_aligned(const KeypointSequence& gt, const KeypointSequence& gen, const char* op) {
  if (gt.frame_count() != gen.frame_count() || gt.keypoints_per_frame() != gen.keypoints_per_frame()) {
    throw ShapeError(std::string(op) + ": ground truth has " + std::to_string(gt.frame_count()) + " frames x " +
                     std::to_string(gt.keypoints_per_frame()) + " points, generated has " +
                     std::to_string(gen.frame_count()) + " x " + std::to_string(gen.keypoints_per_frame()));
  }
}

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw ShapeError(std::string(op) + ": length " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

double l1(const ImageTensor& a, const ImageTensor& b) {
  require_same_shape(a, b, "l1");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(static_cast<double>(a[i]) - b[i]);
  return sum / static_cast<double>(a.size());
}

double mse(const ImageTensor& a, const ImageTensor& b) {
  require_same_shape(a, b, "mse");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(const ImageTensor& a, const ImageTensor& b, double dynamic_range) {
  return psnr_from_mse(mse(a, b), dynamic_range);
}

double masked_mse(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask) {
  require_same_shape(a, b, "masked_mse");
  if (mask.height() != a.height() || mask.width() != a.width()) {
    throw ShapeError("masked_mse: image " + shape_string(a.height(), a.width()) + " vs mask " +
                     shape_string(mask.height(), mask.width()));
  }
  const std::size_t channels = a.channels();
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    const double m = mask[p];
    if (m == 0.0) continue;
    double sq = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const double d = static_cast<double>(a[p * channels + c]) - b[p * channels + c];
      sq += d * d;
    }
    weighted += m * sq;
    total += m;
  }
  if (total <= 0.0) throw ArgumentError("masked metric: mask is all zero");
  return weighted / (static_cast<double>(channels) * total);
}

double masked_psnr(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask, double dynamic_range) {
  return psnr_from_mse(masked_mse(a, b, mask), dynamic_range);
}

AlphaMask harden(const AlphaMask& mask, float threshold) {
  std::vector<float> out(mask.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mask[i] >= threshold ? 1.0f : 0.0f;
  return AlphaMask(mask.height(), mask.width(), std::move(out));
}

std::optional<double> akd_frame(std::span<const Keypoint> ground_truth, std::span<const Keypoint> generated) {
  require_same_length(ground_truth.size(), generated.size(), "akd");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    if (!ground_truth[i].detected || !generated[i].detected) continue;
    sum += std::hypot(ground_truth[i].x - generated[i].x, ground_truth[i].y - generated[i].y);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> mkr_frame(std::span<const Keypoint> ground_truth, std::span<const Keypoint> generated) {
  require_same_length(ground_truth.size(), generated.size(), "mkr");
  std::size_t detected = 0;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    if (!ground_truth[i].detected) continue;
    ++detected;
    missing += !generated[i].detected;
  }
  if (detected == 0) return std::nullopt;
  return static_cast<double>(missing) / static_cast<double>(detected);
}

double aed_frame(std::span<const double> ground_truth, std::span<const double> generated) {
  require_same_length(ground_truth.size(), generated.size(), "aed");
  double sq = 0.0;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    const double d = ground_truth[i] - generated[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double akd(const KeypointSequence& ground_truth, const KeypointSequence& generated) {
  require_aligned(ground_truth, generated, "akd");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t f = 0; f < ground_truth.frame_count(); ++f) {
    const auto& gt = ground_truth[f];
    const auto& gen = generated[f];
    for (std::size_t i = 0; i < gt.size(); ++i) {
      if (!gt[i].detected || !gen[i].detected) continue;
      sum += std::hypot(gt[i].x - gen[i].x, gt[i].y - gen[i].y);
      ++n;
    }
  }
  if (n == 0) throw ArgumentError("akd: no keypoint is detected in both sequences");
  return sum / static_cast<double>(n);
}

double mkr(const KeypointSequence& ground_truth, const KeypointSequence& generated) {
  require_aligned(ground_truth, generated, "mkr");
  std::size_t detected = 0;
  std::size_t missing = 0;
  for (std::size_t f = 0; f < ground_truth.frame_count(); ++f) {
    for (std::size_t i = 0; i < ground_truth[f].size(); ++i) {
      if (!ground_truth[f][i].detected) continue;
      ++detected;
      missing += !generated[f][i].detected;
    }
  }
  if (detected == 0) throw ArgumentError("mkr: ground truth has no detected keypoints");
  return static_cast<double>(missing) / static_cast<double>(detected);
}

double aed(const EmbeddingSequence& ground_truth, const EmbeddingSequence& generated) {
  if (ground_truth.frame_count() != generated.frame_count()) {
    throw ShapeError("aed: " + std::to_string(ground_truth.frame_count()) + " vs " +
                     std::to_string(generated.frame_count()) + " frames");
  }
  if (ground_truth.dimension() != generated.dimension()) {
    throw ShapeError("aed: embedding dimension " + std::to_string(ground_truth.dimension()) + " vs " +
                     std::to_string(generated.dimension()));
  }
  if (ground_truth.frame_count() == 0) throw ArgumentError("aed: empty sequences");
  double sum = 0.0;
  for (std::size_t f = 0; f < ground_truth.frame_count(); ++f) sum += aed_frame(ground_truth[f], generated[f]);
  return sum / static_cast<double>(ground_truth.frame_count());
}

Summary aggregate(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("aggregate: no values");
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("aggregate: non-finite value");
    sum += v;
  }
  const auto n = static_cast<double>(values.size());
  Summary s{sum / n, values.size(), 0.0};
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.ci95 = 1.96 * std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

}  // namespace prioritycut::metrics
