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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "prioritycut/error.hpp"
#include "prioritycut/tensor_io.hpp"

namespace prioritycut::io {

namespace {

constexpr std::size_t kMagicSize = 4;

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::byte>((v >> shift) & 0xFFu));
}

std::uint32_t get_u32(std::span<const std::byte> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::to_integer<std::uint32_t>(bytes[offset + i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::byte> encode_pct1(std::span<const std::uint32_t> dims, std::span<const float> data) {
  if (dims.empty() || dims.size() > std::numeric_limits<std::uint8_t>::max()) {
    throw ArgumentError("PCT1: rank must be in [1, 255]");
  }
  std::size_t count = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw ArgumentError("PCT1: zero-sized dimension");
    count *= d;
  }
  if (count != data.size()) {
    throw ShapeError("PCT1: dims describe " + std::to_string(count) + " elements, payload has " +
                     std::to_string(data.size()));
  }

  std::vector<std::byte> out;
  out.reserve(kMagicSize + 1 + 4 * dims.size() + 4 * data.size());
  for (char c : kPct1Magic) out.push_back(static_cast<std::byte>(c));
  out.push_back(static_cast<std::byte>(dims.size()));
  for (std::uint32_t d : dims) put_u32(out, d);
  for (float v : data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

RawTensor decode_pct1(std::span<const std::byte> bytes) {
  if (bytes.size() < kMagicSize + 1 ||
      std::memcmp(bytes.data(), kPct1Magic.data(), kMagicSize) != 0) {
    throw FormatError("PCT1: bad magic");
  }
  const std::size_t rank = std::to_integer<std::size_t>(bytes[kMagicSize]);
  if (rank == 0) throw FormatError("PCT1: rank 0");
  const std::size_t header = kMagicSize + 1 + 4 * rank;
  if (bytes.size() < header) throw FormatError("PCT1: truncated header");

  RawTensor t;
  t.dims.reserve(rank);
  std::size_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::uint32_t d = get_u32(bytes, kMagicSize + 1 + 4 * i);
    if (d == 0) throw FormatError("PCT1: dimension " + std::to_string(i) + " is zero");
    if (count > std::numeric_limits<std::size_t>::max() / 4 / d) throw FormatError("PCT1: dims overflow");
    count *= d;
    t.dims.push_back(d);
  }

  const std::size_t payload = bytes.size() - header;
  if (payload < 4 * count) {
    throw FormatError("PCT1: truncated payload, expected " + std::to_string(count) + " floats, found " +
                      std::to_string(payload / 4));
  }
  if (payload > 4 * count) throw FormatError("PCT1: trailing bytes after payload");

  t.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float v = std::bit_cast<float>(get_u32(bytes, header + 4 * i));
    if (!std::isfinite(v)) throw FormatError("PCT1: non-finite value at element " + std::to_string(i));
    t.data[i] = v;
  }
  return t;
}

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  std::vector<std::byte> bytes(size);
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size))) {
    throw IoError("failed reading " + path.string());
  }
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

RawTensor read_pct1(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_pct1(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_pct1(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                std::span<const float> data) {
  write_file(path, encode_pct1(dims, data));
}

}  // namespace prioritycut::io
