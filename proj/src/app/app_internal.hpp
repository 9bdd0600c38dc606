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

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "prioritycut/app.hpp"
#include "prioritycut/tensor_io.hpp"

namespace prioritycut::app {

struct FrameSource {
  const char* role;
  std::filesystem::path dir;
};

/// One frame's files, in the order of the sources passed to pair_frames.
struct FrameSet {
  std::string stem;
  std::vector<std::filesystem::path> files;
};

struct FrameOutcome {
  nlohmann::ordered_json entry;
  std::string error;
  bool failed = false;
};

/// Pairs files across directories by stem. Unmatched or missing frames are a
/// configuration error.
std::vector<FrameSet> pair_frames(const std::vector<FrameSource>& sources);

/// Runs body(i) per frame on the worker pool, capturing per-frame exceptions.
std::vector<FrameOutcome> run_frames(std::size_t count, std::size_t jobs,
                                     const std::function<nlohmann::ordered_json(std::size_t)>& body);

/// Moves per-frame entries into manifest["frames"] in frame order and failures
/// into manifest["failures"]. Returns true if any frame failed.
bool collect_outcomes(const std::vector<FrameSet>& frames, std::vector<FrameOutcome>& outcomes,
                      nlohmann::ordered_json& manifest, std::ostream& log);

void prepare_out_dir(const std::filesystem::path& dir);
void write_text(const std::filesystem::path& path, const std::string& text);
const std::filesystem::path& require_dir(const std::filesystem::path& dir, const char* flag);
void validate_common(const RunConfig& cfg);
PercentileK frame_k(const RunConfig& cfg, RngState& rng);
nlohmann::ordered_json run_header(const char* command, const RunConfig& cfg);

/// Maps run-level exceptions to kExitConfigError with a message on `log`.
template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace prioritycut::app
