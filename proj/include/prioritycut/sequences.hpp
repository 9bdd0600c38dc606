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
#include <vector>

namespace prioritycut {

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  bool detected = false;

  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

/// Per-frame detector keypoints. Every frame carries the same number of points.
class KeypointSequence {
 public:
  using Frame = std::vector<Keypoint>;

  KeypointSequence() = default;
  explicit KeypointSequence(std::vector<Frame> frames);

  std::size_t frame_count() const noexcept { return frames_.size(); }
  std::size_t keypoints_per_frame() const noexcept { return frames_.empty() ? 0 : frames_.front().size(); }
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  const Frame& operator[](std::size_t i) const noexcept { return frames_[i]; }

 private:
  std::vector<Frame> frames_;
};

/// Per-frame feature vectors of one fixed dimensionality.
class EmbeddingSequence {
 public:
  using Vector = std::vector<double>;

  EmbeddingSequence() = default;
  explicit EmbeddingSequence(std::vector<Vector> frames);

  std::size_t frame_count() const noexcept { return frames_.size(); }
  std::size_t dimension() const noexcept { return frames_.empty() ? 0 : frames_.front().size(); }
  const std::vector<Vector>& frames() const noexcept { return frames_; }
  const Vector& operator[](std::size_t i) const noexcept { return frames_[i]; }

 private:
  std::vector<Vector> frames_;
};

}  // namespace prioritycut
