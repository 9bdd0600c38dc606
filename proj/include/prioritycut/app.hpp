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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "prioritycut/augment.hpp"
#include "prioritycut/error.hpp"

namespace prioritycut::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFrameFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Invalid or inconsistent run configuration; maps to kExitConfigError.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Method { kPriorityCut, kCutMix, kCutout, kMixup };
enum class MaskMode { kSalient, kTopK, kNegTopK };
enum class OutputFormat { kJson, kTable };

struct RunConfig {
  // Frame directories. Files are paired across directories by file stem.
  std::filesystem::path driving_dir;
  std::filesystem::path generated_dir;
  std::filesystem::path occlusion_dir;
  std::filesystem::path background_dir;
  std::filesystem::path ground_truth_dir;
  std::filesystem::path salient_mask_dir;

  std::filesystem::path gt_keypoints;
  std::filesystem::path gen_keypoints;
  std::filesystem::path gt_embeddings;
  std::filesystem::path gen_embeddings;

  // A fixed k wins over the sampled range.
  std::optional<double> k;
  double k_min = kDefaultKMin;
  double k_max = kDefaultKMax;
  double tau = 0.9;
  std::uint64_t seed = 0;

  Method method = Method::kPriorityCut;
  std::optional<double> lambda;    // mixup / cutmix; drawn uniform on [0, 1) when unset
  std::size_t cutout_side = 0;     // 0 selects min(H, W) / 2
  float fill = 0.0f;

  std::optional<std::size_t> epoch;  // enables the probability gate
  std::size_t warmup_epochs = AugmentSchedule::kDefaultWarmupEpochs;
  double max_probability = AugmentSchedule::kDefaultMaxProbability;

  std::vector<MaskMode> mask_modes;
  bool hard_masks = false;
  std::vector<std::string> metrics;  // empty selects every applicable metric
  double psnr_cap = 100.0;

  std::size_t jobs = 1;
  std::filesystem::path out_dir;
  bool keep_intermediates = false;
  OutputFormat format = OutputFormat::kTable;
};

/// Writes `<stem>.mask.pct1` and an 8-bit `<stem>.mask.png` preview per frame,
/// plus `manifest.json`.
int derive_mask(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Writes `<stem>.aug.pct1`, `<stem>.aug.png`, `<stem>.mask.pct1` per frame and
/// `manifest.json`.
int augment(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Writes `report.json`, `report.txt`, and `per_frame.json`; prints the report
/// in the configured format.
int evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& log);

std::optional<Method> parse_method(std::string_view name);
std::optional<MaskMode> parse_mask_mode(std::string_view name);
std::string_view to_string(Method method);
std::string_view to_string(MaskMode mode);

/// Image and mask files of a directory sorted by name: .png .pgm .ppm .pct1.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. fn must not throw.
template <class F>
void parallel_for(std::size_t count, std::size_t jobs, F&& fn);

}  // namespace prioritycut::app

#include "prioritycut/detail/parallel.hpp"
