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

#include "prioritycut/tensor_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <string>

#include "prioritycut/error.hpp"

namespace prioritycut::io {

namespace {

bool is_pct1(std::span<const std::byte> bytes) {
  return bytes.size() >= kPct1Magic.size() && std::memcmp(bytes.data(), kPct1Magic.data(), kPct1Magic.size()) == 0;
}

std::vector<float> normalize(const Raster& r) {
  const double full_scale = r.bit_depth == 16 ? 65535.0 : 255.0;
  std::vector<float> out(r.samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<float>(r.samples[i] / full_scale);
  return out;
}

std::uint32_t dim32(std::size_t d) { return static_cast<std::uint32_t>(d); }

void save_plane(const detail::Plane& p, const std::filesystem::path& path) {
  const std::uint32_t dims[2] = {dim32(p.height()), dim32(p.width())};
  write_pct1(path, dims, p.data());
}

RawTensor read_rank2(const std::filesystem::path& path, const char* type_name) {
  RawTensor raw = read_pct1(path);
  if (raw.dims.size() != 2) {
    throw FormatError(path.string() + ": " + type_name + " needs a rank-2 tensor, got rank " +
                      std::to_string(raw.dims.size()));
  }
  return raw;
}

// Rewraps domain errors raised by the tensor constructors with the file name.
template <class F>
auto with_path(const std::filesystem::path& path, F&& make) {
  try {
    return make();
  } catch (const ArgumentError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::uint16_t quantize8(float v) { return static_cast<std::uint16_t>(std::lround(static_cast<double>(v) * 255.0)); }

}  // namespace

ImageTensor load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_pct1(bytes)) {
    RawTensor raw;
    try {
      raw = decode_pct1(bytes);
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    if (raw.dims.size() != 2 && raw.dims.size() != 3) {
      throw FormatError(path.string() + ": image tensor must have rank 2 or 3");
    }
    const std::size_t channels = raw.dims.size() == 3 ? raw.dims[2] : 1;
    return with_path(path, [&] { return ImageTensor(raw.dims[0], raw.dims[1], channels, std::move(raw.data)); });
  }
  const Raster r = read_raster(path);
  return ImageTensor(r.height, r.width, r.channels, normalize(r));
}

AlphaMask load_mask(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_pct1(bytes)) return load_tensor<AlphaMask>(path);
  const Raster r = read_raster(path);
  if (r.channels != 1) {
    throw FormatError(path.string() + ": mask must be single-channel, got " + std::to_string(r.channels) +
                      " channels");
  }
  return AlphaMask(r.height, r.width, normalize(r));
}

void save_tensor(const ImageTensor& t, const std::filesystem::path& path) {
  const std::uint32_t dims[3] = {dim32(t.height()), dim32(t.width()), dim32(t.channels())};
  write_pct1(path, dims, t.data());
}

void save_tensor(const AlphaMask& t, const std::filesystem::path& path) { save_plane(t, path); }
void save_tensor(const BinaryMask& t, const std::filesystem::path& path) { save_plane(t, path); }
void save_tensor(const PredictionMap& t, const std::filesystem::path& path) { save_plane(t, path); }

template <>
ImageTensor load_tensor<ImageTensor>(const std::filesystem::path& path) {
  RawTensor raw = read_pct1(path);
  if (raw.dims.size() != 3) {
    throw FormatError(path.string() + ": ImageTensor needs a rank-3 tensor, got rank " +
                      std::to_string(raw.dims.size()));
  }
  return with_path(path, [&] { return ImageTensor(raw.dims[0], raw.dims[1], raw.dims[2], std::move(raw.data)); });
}

template <>
AlphaMask load_tensor<AlphaMask>(const std::filesystem::path& path) {
  RawTensor raw = read_rank2(path, "AlphaMask");
  return with_path(path, [&] { return AlphaMask(raw.dims[0], raw.dims[1], std::move(raw.data)); });
}

template <>
BinaryMask load_tensor<BinaryMask>(const std::filesystem::path& path) {
  RawTensor raw = read_rank2(path, "BinaryMask");
  return with_path(path, [&] { return BinaryMask(raw.dims[0], raw.dims[1], std::move(raw.data)); });
}

template <>
PredictionMap load_tensor<PredictionMap>(const std::filesystem::path& path) {
  RawTensor raw = read_rank2(path, "PredictionMap");
  return with_path(path, [&] { return PredictionMap(raw.dims[0], raw.dims[1], std::move(raw.data)); });
}

void save_png8(const ImageTensor& t, const std::filesystem::path& path) {
  Raster r{t.height(), t.width(), t.channels(), 8, {}};
  r.samples.reserve(t.size());
  for (float v : t.data()) r.samples.push_back(quantize8(v));
  write_png(path, r);
}

void save_png8(const detail::Plane& mask, const std::filesystem::path& path) {
  Raster r{mask.height(), mask.width(), 1, 8, {}};
  r.samples.reserve(mask.size());
  for (float v : mask.data()) r.samples.push_back(quantize8(std::clamp(v, 0.0f, 1.0f)));
  write_png(path, r);
}

// ---------------------------------------------------------------------------
// Detector outputs

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line_no, const char* what) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw FormatError(std::string(what) + ": line " + std::to_string(line_no) + ": non-numeric field '" +
                      std::string(field) + "'");
  }
  return v;
}

template <class F>
void for_each_split(std::string_view text, char sep, F&& f) {
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(sep, start);
    f(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

std::string_view as_text(const std::vector<std::byte>& bytes) {
  return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

}  // namespace

KeypointSequence parse_keypoints(std::string_view text) {
  std::vector<KeypointSequence::Frame> frames;
  std::size_t line_no = 0;
  for_each_split(text, '\n', [&](std::string_view line) {
    ++line_no;
    line = trim(line);
    if (line.empty()) return;
    KeypointSequence::Frame frame;
    for_each_split(line, ';', [&](std::string_view point) {
      std::vector<std::string_view> fields;
      for_each_split(point, ',', [&](std::string_view f) { fields.push_back(f); });
      if (fields.size() != 3) {
        throw FormatError("keypoints: line " + std::to_string(line_no) + ": expected x,y,flag, got '" +
                          std::string(trim(point)) + "'");
      }
      const std::string_view flag = trim(fields[2]);
      if (flag != "0" && flag != "1") {
        throw FormatError("keypoints: line " + std::to_string(line_no) + ": flag must be 0 or 1");
      }
      frame.push_back({parse_double(fields[0], line_no, "keypoints"), parse_double(fields[1], line_no, "keypoints"),
                       flag == "1"});
    });
    frames.push_back(std::move(frame));
  });
  return KeypointSequence(std::move(frames));
}

EmbeddingSequence parse_embeddings(std::string_view text) {
  std::vector<EmbeddingSequence::Vector> frames;
  std::size_t line_no = 0;
  for_each_split(text, '\n', [&](std::string_view line) {
    ++line_no;
    line = trim(line);
    if (line.empty()) return;
    EmbeddingSequence::Vector v;
    for_each_split(line, ',', [&](std::string_view f) { v.push_back(parse_double(f, line_no, "embeddings")); });
    frames.push_back(std::move(v));
  });
  return EmbeddingSequence(std::move(frames));
}

KeypointSequence load_keypoints(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return parse_keypoints(as_text(bytes));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

EmbeddingSequence load_embeddings(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return parse_embeddings(as_text(bytes));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace prioritycut::io
