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

#include "prioritycut/sequences.hpp"

#include <cmath>
#include <string>

#include "prioritycut/error.hpp"

namespace prioritycut {

KeypointSequence::KeypointSequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  for (std::size_t f = 0; f < frames_.size(); ++f) {
    if (frames_[f].size() != frames_.front().size()) {
      throw FormatError("keypoints: frame " + std::to_string(f) + " has " + std::to_string(frames_[f].size()) +
                        " points, frame 0 has " + std::to_string(frames_.front().size()));
    }
    for (const Keypoint& kp : frames_[f]) {
      if (kp.detected && !(std::isfinite(kp.x) && std::isfinite(kp.y))) {
        throw FormatError("keypoints: detected point in frame " + std::to_string(f) +
                          " has non-finite coordinates");
      }
    }
  }
}

EmbeddingSequence::EmbeddingSequence(std::vector<Vector> frames) : frames_(std::move(frames)) {
  for (std::size_t f = 0; f < frames_.size(); ++f) {
    if (frames_[f].size() != frames_.front().size()) {
      throw FormatError("embeddings: frame " + std::to_string(f) + " has dimension " +
                        std::to_string(frames_[f].size()) + ", frame 0 has " +
                        std::to_string(frames_.front().size()));
    }
    for (double v : frames_[f]) {
      if (!std::isfinite(v)) {
        throw FormatError("embeddings: non-finite entry in frame " + std::to_string(f));
      }
    }
  }
}

}  // namespace prioritycut
