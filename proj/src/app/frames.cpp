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

#include "app_internal.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace prioritycut::app {

namespace fs = std::filesystem;

namespace {

bool is_frame_file(const fs::path& p) {
  static const std::set<std::string> kExtensions = {".png", ".pgm", ".ppm", ".pct1", ".pct"};
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return kExtensions.count(ext) > 0;
}

}  // namespace

std::vector<fs::path> list_frames(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_frame_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

std::vector<FrameSet> pair_frames(const std::vector<FrameSource>& sources) {
  std::vector<std::map<std::string, fs::path>> by_stem(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    for (const fs::path& file : list_frames(sources[s].dir)) {
      const std::string stem = file.stem().string();
      if (!by_stem[s].emplace(stem, file).second) {
        throw ConfigError(std::string(sources[s].role) + ": two files share the stem '" + stem + "' in " +
                          sources[s].dir.string());
      }
    }
    if (by_stem[s].empty()) {
      throw ConfigError(std::string(sources[s].role) + ": no frames in " + sources[s].dir.string());
    }
  }

  std::vector<FrameSet> frames;
  for (const auto& [stem, path] : by_stem.front()) {
    FrameSet set{stem, {path}};
    for (std::size_t s = 1; s < sources.size(); ++s) {
      const auto it = by_stem[s].find(stem);
      if (it == by_stem[s].end()) {
        throw ConfigError("frame '" + stem + "' from " + sources.front().role + " has no match in " +
                          sources[s].role + " (" + sources[s].dir.string() + ")");
      }
      set.files.push_back(it->second);
    }
    frames.push_back(std::move(set));
  }
  for (std::size_t s = 1; s < sources.size(); ++s) {
    for (const auto& [stem, path] : by_stem[s]) {
      if (!by_stem.front().count(stem)) {
        throw ConfigError("frame '" + stem + "' from " + sources[s].role + " has no match in " +
                          sources.front().role + " (" + sources.front().dir.string() + ")");
      }
    }
  }
  return frames;
}

std::vector<FrameOutcome> run_frames(std::size_t count, std::size_t jobs,
                                     const std::function<nlohmann::ordered_json(std::size_t)>& body) {
  std::vector<FrameOutcome> outcomes(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    try {
      outcomes[i].entry = body(i);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
      outcomes[i].failed = true;
    }
  });
  return outcomes;
}

void prepare_out_dir(const fs::path& dir) {
  if (dir.empty()) throw ConfigError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  io::write_file(path, std::as_bytes(std::span<const char>(text.data(), text.size())));
}

const fs::path& require_dir(const fs::path& dir, const char* flag) {
  if (dir.empty()) throw ConfigError(std::string(flag) + " is required");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError(std::string(flag) + ": not a directory: " + dir.string());
  return dir;
}

void validate_common(const RunConfig& cfg) {
  if (cfg.k && !(*cfg.k >= 0.0 && *cfg.k <= 100.0)) throw ConfigError("--k must be in [0, 100]");
  if (!(0.0 <= cfg.k_min && cfg.k_min <= cfg.k_max && cfg.k_max <= 100.0)) {
    throw ConfigError("need 0 <= --k-min <= --k-max <= 100");
  }
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) throw ConfigError("--tau must be in [0, 1]");
  if (cfg.jobs == 0) throw ConfigError("--jobs must be >= 1");
}

PercentileK frame_k(const RunConfig& cfg, RngState& rng) {
  return cfg.k ? PercentileK(*cfg.k) : sample_k(rng, cfg.k_min, cfg.k_max);
}

nlohmann::ordered_json run_header(const char* command, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["seed"] = cfg.seed;
  doc["tau"] = cfg.tau;
  if (cfg.k) {
    doc["k"] = *cfg.k;
  } else {
    doc["k_min"] = cfg.k_min;
    doc["k_max"] = cfg.k_max;
  }
  return doc;
}

bool collect_outcomes(const std::vector<FrameSet>& frames, std::vector<FrameOutcome>& outcomes,
                      nlohmann::ordered_json& manifest, std::ostream& log) {
  manifest["frames"] = nlohmann::ordered_json::array();
  manifest["failures"] = nlohmann::ordered_json::array();
  bool failed = false;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (outcomes[i].failed) {
      failed = true;
      log << "error: frame " << frames[i].stem << ": " << outcomes[i].error << "\n";
      manifest["failures"].push_back({{"frame", frames[i].stem}, {"error", outcomes[i].error}});
    } else {
      manifest["frames"].push_back(std::move(outcomes[i].entry));
    }
  }
  return failed;
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "prioritycut") return Method::kPriorityCut;
  if (name == "cutmix") return Method::kCutMix;
  if (name == "cutout") return Method::kCutout;
  if (name == "mixup") return Method::kMixup;
  return std::nullopt;
}

std::optional<MaskMode> parse_mask_mode(std::string_view name) {
  if (name == "salient") return MaskMode::kSalient;
  if (name == "topk") return MaskMode::kTopK;
  if (name == "neg-topk") return MaskMode::kNegTopK;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kPriorityCut: return "prioritycut";
    case Method::kCutMix: return "cutmix";
    case Method::kCutout: return "cutout";
    case Method::kMixup: return "mixup";
  }
  return "?";
}

std::string_view to_string(MaskMode mode) {
  switch (mode) {
    case MaskMode::kSalient: return "salient";
    case MaskMode::kTopK: return "topk";
    case MaskMode::kNegTopK: return "neg-topk";
  }
  return "?";
}

}  // namespace prioritycut::app
