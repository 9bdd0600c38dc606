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

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace prioritycut {

namespace detail {

// Row-major H x W float plane shared by the single-channel types. Derived
// classes validate their value domain on construction; after that the
// contents are immutable.
class Plane {
 public:
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }
  float operator[](std::size_t i) const noexcept { return data_[i]; }
  float at(std::size_t y, std::size_t x) const noexcept { return data_[y * width_ + x]; }

  bool same_shape(const Plane& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 protected:
  Plane() = default;
  Plane(std::size_t height, std::size_t width, std::vector<float> data, const char* type_name);

  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

}  // namespace detail

/// H x W x C image with interleaved channels and samples in [0, 1].
class ImageTensor {
 public:
  ImageTensor() = default;
  ImageTensor(std::size_t height, std::size_t width, std::size_t channels, std::vector<float> data);

  static ImageTensor filled(std::size_t height, std::size_t width, std::size_t channels, float value);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return height_ * width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }
  float operator[](std::size_t i) const noexcept { return data_[i]; }
  float at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
    return data_[(y * width_ + x) * channels_ + c];
  }

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t channels_ = 0;
  std::vector<float> data_;
};

/// Soft mask in [0, 1]. Holds occlusion maps (0 = fully occluded) and alpha
/// background masks.
class AlphaMask : public detail::Plane {
 public:
  AlphaMask() = default;
  AlphaMask(std::size_t height, std::size_t width, std::vector<float> data);
  static AlphaMask filled(std::size_t height, std::size_t width, float value);
};

/// Mask whose every element is exactly 0 or 1.
class BinaryMask : public detail::Plane {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t height, std::size_t width, std::vector<float> data);
  static BinaryMask filled(std::size_t height, std::size_t width, bool value);

  /// Number of elements equal to zero.
  std::size_t count_zeros() const noexcept;

  AlphaMask as_alpha() const { return AlphaMask(height_, width_, data_); }
};

/// Per-pixel realness scores from a pixel-wise discriminator. Unbounded, finite.
class PredictionMap : public detail::Plane {
 public:
  PredictionMap() = default;
  PredictionMap(std::size_t height, std::size_t width, std::vector<float> data);
};

/// Masks accepted wherever a per-pixel blending weight is expected.
template <class M>
concept WeightMask = std::same_as<M, AlphaMask> || std::same_as<M, BinaryMask>;

/// Formats "HxW" or "HxWxC" for error messages.
std::string shape_string(std::size_t height, std::size_t width);
std::string shape_string(std::size_t height, std::size_t width, std::size_t channels);

}  // namespace prioritycut
