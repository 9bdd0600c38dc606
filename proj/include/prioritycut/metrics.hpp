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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "prioritycut/sequences.hpp"
#include "prioritycut/tensor.hpp"

namespace prioritycut::metrics {

/// PSNR of two identical images.
inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

/// Gaussian-window SSIM parameters; the defaults are the usual 11x11, sigma 1.5.
struct SsimParams {
  std::size_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;

  void validate() const;
};

/// Per-pixel SSIM over the positions where the window fits entirely inside the
/// image, averaged across channels. Entry (r, c) is centred on image pixel
/// (r + offset, c + offset) with offset = window / 2.
struct SsimMap {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t offset = 0;
  std::vector<double> values;
};

double l1(const ImageTensor& a, const ImageTensor& b);
double mse(const ImageTensor& a, const ImageTensor& b);

/// 10 log10(L^2 / MSE); kPsnrInfinity when the images are equal.
double psnr(const ImageTensor& a, const ImageTensor& b, double dynamic_range = 1.0);

SsimMap ssim_map(const ImageTensor& a, const ImageTensor& b, const SsimParams& params = {});
double ssim(const ImageTensor& a, const ImageTensor& b, const SsimParams& params = {});

/// sum m (a - b)^2 / (C sum m), the mask broadcast over the C channels.
double masked_mse(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask);
double masked_psnr(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask, double dynamic_range = 1.0);

/// Mask-weighted mean of the SSIM map. The mask is sampled at each window
/// centre, so only its interior (offset pixels in from every border) counts.
double masked_ssim(const ImageTensor& a, const ImageTensor& b, const AlphaMask& mask,
                   const SsimParams& params = {});

/// Hard-thresholded copy of an alpha mask: 1 where alpha >= threshold.
AlphaMask harden(const AlphaMask& mask, float threshold = 0.5f);

/// Mean Euclidean distance over keypoints detected in both sequences.
double akd(const KeypointSequence& ground_truth, const KeypointSequence& generated);
/// Fraction of ground-truth detections missing from the generated sequence.
double mkr(const KeypointSequence& ground_truth, const KeypointSequence& generated);
/// Mean per-frame Euclidean distance between embeddings.
double aed(const EmbeddingSequence& ground_truth, const EmbeddingSequence& generated);

// Single-frame forms used for per-frame aggregation. nullopt when the frame
// has no keypoint the metric can be computed on.
std::optional<double> akd_frame(std::span<const Keypoint> ground_truth, std::span<const Keypoint> generated);
std::optional<double> mkr_frame(std::span<const Keypoint> ground_truth, std::span<const Keypoint> generated);
double aed_frame(std::span<const double> ground_truth, std::span<const double> generated);

struct Summary {
  double mean = 0.0;
  std::size_t count = 0;
  double ci95 = 0.0;  // 1.96 * sample stddev / sqrt(n); 0 for n = 1

  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary aggregate(std::span<const double> values);

}  // namespace prioritycut::metrics
