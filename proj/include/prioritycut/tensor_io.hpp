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
#include <span>
#include <string_view>
#include <vector>

#include "prioritycut/sequences.hpp"
#include "prioritycut/tensor.hpp"

namespace prioritycut::io {

// PCT1 layout: "PCT1" magic, u8 rank, rank x u32 little-endian dims, then the
// row-major f32 little-endian payload. Nothing may follow the payload.
inline constexpr std::string_view kPct1Magic = "PCT1";

struct RawTensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;
};

std::vector<std::byte> encode_pct1(std::span<const std::uint32_t> dims, std::span<const float> data);
RawTensor decode_pct1(std::span<const std::byte> bytes);

RawTensor read_pct1(const std::filesystem::path& path);
void write_pct1(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                std::span<const float> data);

/// Integer raster as decoded from disk, before normalization.
struct Raster {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;  // 1 or 3
  int bit_depth = 0;         // 8 or 16
  std::vector<std::uint16_t> samples;
};

/// Reads 8/16-bit grayscale or RGB PNG, or binary PGM/PPM (P5/P6).
Raster read_raster(const std::filesystem::path& path);
/// Writes a PNG; `bit_depth` selects 8 or 16-bit samples.
void write_png(const std::filesystem::path& path, const Raster& raster);

/// Loads a raster (normalized by 2^bits - 1) or a PCT1 tensor of rank 2 or 3.
ImageTensor load_image(const std::filesystem::path& path);
/// Loads a single-channel raster or a rank-2 PCT1 tensor.
AlphaMask load_mask(const std::filesystem::path& path);

void save_tensor(const ImageTensor& t, const std::filesystem::path& path);
void save_tensor(const AlphaMask& t, const std::filesystem::path& path);
void save_tensor(const BinaryMask& t, const std::filesystem::path& path);
void save_tensor(const PredictionMap& t, const std::filesystem::path& path);

/// Reads a PCT1 file back into the requested type; rank and value domain are
/// validated against T.
template <class T>
T load_tensor(const std::filesystem::path& path);
template <>
ImageTensor load_tensor<ImageTensor>(const std::filesystem::path& path);
template <>
AlphaMask load_tensor<AlphaMask>(const std::filesystem::path& path);
template <>
BinaryMask load_tensor<BinaryMask>(const std::filesystem::path& path);
template <>
PredictionMap load_tensor<PredictionMap>(const std::filesystem::path& path);

/// 8-bit PNG previews. Samples are rounded from [0, 1] to [0, 255].
void save_png8(const ImageTensor& t, const std::filesystem::path& path);
void save_png8(const detail::Plane& mask, const std::filesystem::path& path);

// Keypoints: one frame per line, ';'-separated "x,y,flag" points, flag 1/0.
// Embeddings: one frame per line, ','-separated floats. Blank lines are skipped.
KeypointSequence parse_keypoints(std::string_view text);
EmbeddingSequence parse_embeddings(std::string_view text);
KeypointSequence load_keypoints(const std::filesystem::path& path);
EmbeddingSequence load_embeddings(const std::filesystem::path& path);

std::vector<std::byte> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes);

}  // namespace prioritycut::io
