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

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <string>

#include "prioritycut/error.hpp"
#include "prioritycut/tensor_io.hpp"

namespace prioritycut::io {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

struct PngIo {
  std::span<const std::byte> input;
  std::size_t offset = 0;
  std::vector<std::byte> output;
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* io = static_cast<PngIo*>(png_get_error_ptr(png));
  std::strncpy(io->message, msg, sizeof(io->message) - 1);
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

void png_read_bytes(png_structp png, png_bytep dst, png_size_t length) {
  auto* io = static_cast<PngIo*>(png_get_io_ptr(png));
  if (io->offset + length > io->input.size()) png_error(png, "unexpected end of stream");
  std::memcpy(dst, io->input.data() + io->offset, length);
  io->offset += length;
}

void png_write_bytes(png_structp png, png_bytep src, png_size_t length) {
  auto* io = static_cast<PngIo*>(png_get_io_ptr(png));
  const auto* p = reinterpret_cast<const std::byte*>(src);
  io->output.insert(io->output.end(), p, p + length);
}

void png_flush_noop(png_structp) {}

// Only trivially destructible locals live in the frames that call setjmp;
// every buffer is owned by the caller.
struct PngDecode {
  PngIo io;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<png_byte> row;
};

// Returns false with io.message set on failure.
bool png_read_header(png_structp png, png_infop info, PngDecode& d) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_read_fn(png, &d.io, png_read_bytes);
  png_read_info(png, info);
  int interlace = 0;
  png_get_IHDR(png, info, &d.width, &d.height, &d.bit_depth, &d.color_type, &interlace, nullptr, nullptr);
  if (interlace != PNG_INTERLACE_NONE) {
    std::strncpy(d.io.message, "interlaced PNG is not supported", sizeof(d.io.message) - 1);
    return false;
  }
  return true;
}

bool png_read_rows(png_structp png, png_infop info, PngDecode& d, Raster& out) {
  if (setjmp(png_jmpbuf(png))) return false;
  const std::size_t row_samples = out.width * out.channels;
  const std::size_t bytes_per_sample = out.bit_depth == 16 ? 2 : 1;
  for (std::size_t y = 0; y < out.height; ++y) {
    png_read_row(png, d.row.data(), nullptr);
    std::uint16_t* dst = out.samples.data() + y * row_samples;
    for (std::size_t i = 0; i < row_samples; ++i) {
      dst[i] = bytes_per_sample == 2
                   ? static_cast<std::uint16_t>((d.row[2 * i] << 8) | d.row[2 * i + 1])
                   : d.row[i];
    }
  }
  png_read_end(png, info);
  return true;
}

Raster decode_png(std::span<const std::byte> bytes) {
  PngDecode d;
  d.io.input = bytes;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &d.io, png_error_handler, png_warning_handler);
  if (png == nullptr) throw FormatError("PNG: cannot create decoder");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_read_struct(png, info, nullptr); }
  } guard{&png, &info};
  if (info == nullptr) throw FormatError("PNG: cannot create decoder");

  if (!png_read_header(png, info, d)) throw FormatError(std::string("PNG: ") + d.io.message);

  Raster out;
  if (d.color_type == PNG_COLOR_TYPE_GRAY) {
    out.channels = 1;
  } else if (d.color_type == PNG_COLOR_TYPE_RGB) {
    out.channels = 3;
  } else {
    throw FormatError("PNG: unsupported color type " + std::to_string(d.color_type) +
                      " (only grayscale and RGB)");
  }
  if (d.bit_depth != 8 && d.bit_depth != 16) {
    throw FormatError("PNG: unsupported bit depth " + std::to_string(d.bit_depth));
  }
  out.height = d.height;
  out.width = d.width;
  out.bit_depth = d.bit_depth;
  out.samples.resize(out.height * out.width * out.channels);
  d.row.resize(png_get_rowbytes(png, info));

  if (!png_read_rows(png, info, d, out)) throw FormatError(std::string("PNG: ") + d.io.message);
  return out;
}

bool png_write_all(png_structp png, png_infop info, const Raster& raster, std::vector<png_byte>& row) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width), static_cast<png_uint_32>(raster.height),
               raster.bit_depth, raster.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t row_samples = raster.width * raster.channels;
  for (std::size_t y = 0; y < raster.height; ++y) {
    const std::uint16_t* src = raster.samples.data() + y * row_samples;
    for (std::size_t i = 0; i < row_samples; ++i) {
      if (raster.bit_depth == 16) {
        row[2 * i] = static_cast<png_byte>(src[i] >> 8);
        row[2 * i + 1] = static_cast<png_byte>(src[i] & 0xFF);
      } else {
        row[i] = static_cast<png_byte>(src[i]);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, info);
  return true;
}

// Binary PGM (P5) / PPM (P6). maxval must be 255 or 65535 so that
// normalization by 2^bits - 1 is exact full scale.
Raster decode_pnm(std::span<const std::byte> bytes) {
  std::size_t pos = 2;
  auto at = [&](std::size_t i) { return static_cast<char>(bytes[i]); };
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      const char c = at(pos);
      if (c == '#') {
        while (pos < bytes.size() && at(pos) != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&](const char* what) {
    skip_space();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() && at(pos) >= '0' && at(pos) <= '9' && digits < 9) {
      v = v * 10 + static_cast<std::size_t>(at(pos) - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0) throw FormatError(std::string("PNM: bad ") + what);
    return v;
  };

  Raster out;
  out.channels = at(1) == '6' ? 3 : 1;
  out.width = read_uint("width");
  out.height = read_uint("height");
  const std::size_t maxval = read_uint("maxval");
  if (pos >= bytes.size()) throw FormatError("PNM: truncated header");
  ++pos;  // single whitespace before the raster
  if (out.width == 0 || out.height == 0) throw FormatError("PNM: zero dimension");
  if (maxval == 255) {
    out.bit_depth = 8;
  } else if (maxval == 65535) {
    out.bit_depth = 16;
  } else {
    throw FormatError("PNM: unsupported maxval " + std::to_string(maxval) + " (expected 255 or 65535)");
  }

  const std::size_t count = out.width * out.height * out.channels;
  const std::size_t bps = out.bit_depth / 8;
  if (bytes.size() - pos < count * bps) throw FormatError("PNM: truncated raster");
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.samples[i] = bps == 2 ? static_cast<std::uint16_t>((std::to_integer<unsigned>(bytes[pos + 2 * i]) << 8) |
                                                           std::to_integer<unsigned>(bytes[pos + 2 * i + 1]))
                              : std::to_integer<std::uint16_t>(bytes[pos + i]);
  }
  return out;
}

}  // namespace

Raster read_raster(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    if (bytes.size() >= sizeof(kPngSignature) && std::memcmp(bytes.data(), kPngSignature, sizeof(kPngSignature)) == 0) {
      return decode_png(bytes);
    }
    if (bytes.size() >= 2 && static_cast<char>(bytes[0]) == 'P' &&
        (static_cast<char>(bytes[1]) == '5' || static_cast<char>(bytes[1]) == '6')) {
      return decode_pnm(bytes);
    }
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  throw FormatError(path.string() + ": unrecognized raster format");
}

void write_png(const std::filesystem::path& path, const Raster& raster) {
  if (raster.bit_depth != 8 && raster.bit_depth != 16) throw ArgumentError("PNG: bit depth must be 8 or 16");
  if (raster.channels != 1 && raster.channels != 3) throw ArgumentError("PNG: channels must be 1 or 3");
  if (raster.samples.size() != raster.height * raster.width * raster.channels) {
    throw ShapeError("PNG: sample count does not match dimensions");
  }

  PngIo io;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &io, png_error_handler, png_warning_handler);
  if (png == nullptr) throw FormatError("PNG: cannot create encoder");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};
  if (info == nullptr) throw FormatError("PNG: cannot create encoder");

  png_set_write_fn(png, &io, png_write_bytes, png_flush_noop);
  std::vector<png_byte> row(raster.width * raster.channels * (raster.bit_depth / 8));
  if (!png_write_all(png, info, raster, row)) throw FormatError(std::string("PNG: ") + io.message);
  write_file(path, io.output);
}

}  // namespace prioritycut::io
