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

#include "prioritycut/tensor.hpp"

#include <cmath>

#include "prioritycut/error.hpp"

namespace prioritycut {

namespace {

void check_size(std::size_t expected, std::size_t actual, const char* type_name, const std::string& shape) {
  if (expected != actual) {
    throw ShapeError(std::string(type_name) + ": " + shape + " needs " + std::to_string(expected) +
                     " elements, got " + std::to_string(actual));
  }
}

bool in_unit_interval(float v) { return std::isfinite(v) && v >= 0.0f && v <= 1.0f; }

void check_unit_interval(std::span<const float> data, const char* type_name) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!in_unit_interval(data[i])) {
      throw ArgumentError(std::string(type_name) + ": element " + std::to_string(i) +
                          " is outside [0, 1]");
    }
  }
}

}  // namespace

std::string shape_string(std::size_t height, std::size_t width) {
  return std::to_string(height) + "x" + std::to_string(width);
}

std::string shape_string(std::size_t height, std::size_t width, std::size_t channels) {
  return shape_string(height, width) + "x" + std::to_string(channels);
}

namespace detail {

Plane::Plane(std::size_t height, std::size_t width, std::vector<float> data, const char* type_name)
    : height_(height), width_(width), data_(std::move(data)) {
  check_size(height * width, data_.size(), type_name, shape_string(height, width));
}

}  // namespace detail

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
                         std::vector<float> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  if (channels != 1 && channels != 3) {
    throw ArgumentError("ImageTensor: channel count must be 1 or 3, got " + std::to_string(channels));
  }
  check_size(height * width * channels, data_.size(), "ImageTensor", shape_string(height, width, channels));
  check_unit_interval(data_, "ImageTensor");
}

ImageTensor ImageTensor::filled(std::size_t height, std::size_t width, std::size_t channels, float value) {
  return ImageTensor(height, width, channels, std::vector<float>(height * width * channels, value));
}

AlphaMask::AlphaMask(std::size_t height, std::size_t width, std::vector<float> data)
    : Plane(height, width, std::move(data), "AlphaMask") {
  check_unit_interval(data_, "AlphaMask");
}

AlphaMask AlphaMask::filled(std::size_t height, std::size_t width, float value) {
  return AlphaMask(height, width, std::vector<float>(height * width, value));
}

BinaryMask::BinaryMask(std::size_t height, std::size_t width, std::vector<float> data)
    : Plane(height, width, std::move(data), "BinaryMask") {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    // -0.0f compares equal to 0 but would break bitwise round trips.
    if (data_[i] == 0.0f) {
      data_[i] = 0.0f;
    } else if (data_[i] != 1.0f) {
      throw ArgumentError("BinaryMask: element " + std::to_string(i) + " is not exactly 0 or 1");
    }
  }
}

BinaryMask BinaryMask::filled(std::size_t height, std::size_t width, bool value) {
  return BinaryMask(height, width, std::vector<float>(height * width, value ? 1.0f : 0.0f));
}

std::size_t BinaryMask::count_zeros() const noexcept {
  std::size_t n = 0;
  for (float v : data_) n += (v == 0.0f);
  return n;
}

PredictionMap::PredictionMap(std::size_t height, std::size_t width, std::vector<float> data)
    : Plane(height, width, std::move(data), "PredictionMap") {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw ArgumentError("PredictionMap: element " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace prioritycut
