#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amn/error.hpp"
#include "amn/pattern.hpp"

namespace amn {

namespace bmp_detail {

constexpr std::size_t kFileHeaderSize = 14;
constexpr std::size_t kInfoHeaderSize = 40;
constexpr std::uint32_t kBiRgb = 0;

inline std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

inline std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

inline std::int32_t read_i32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::int32_t>(read_u32(b, at));
}

}  // namespace bmp_detail

/// Integer luma with 299/587/114 weights, rounded half up.
inline std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const unsigned sum = 299u * r + 587u * g + 114u * b;
  return static_cast<std::uint8_t>((sum + 500u) / 1000u);
}

/// Decodes an uncompressed BMP (1/4/8/24 bits per pixel) into a top-down
/// intensity grid. Paletted and 24-bit pixels both go through luma().
inline PixelGrid decode_bmp(std::span<const std::uint8_t> bytes) {
  using namespace bmp_detail;

  if (bytes.size() < kFileHeaderSize + kInfoHeaderSize) {
    throw Error(ErrorCode::bmp_malformed_header,
                "file is " + std::to_string(bytes.size()) + " bytes, shorter than the headers");
  }
  if (bytes[0] != 'B' || bytes[1] != 'M') {
    throw Error(ErrorCode::bmp_malformed_header, "missing 'BM' magic");
  }
  const std::uint32_t pixel_offset = read_u32(bytes, 10);
  const std::uint32_t info_size = read_u32(bytes, 14);
  if (info_size < kInfoHeaderSize || kFileHeaderSize + info_size > bytes.size()) {
    throw Error(ErrorCode::bmp_malformed_header,
                "info header size " + std::to_string(info_size) + " is not supported");
  }
  const std::int32_t raw_width = read_i32(bytes, 18);
  const std::int32_t raw_height = read_i32(bytes, 22);
  const std::uint16_t planes = read_u16(bytes, 26);
  const std::uint16_t depth = read_u16(bytes, 28);
  const std::uint32_t compression = read_u32(bytes, 30);
  const std::uint32_t colors_used = read_u32(bytes, 46);

  if (raw_width <= 0 || raw_height == 0 || raw_height == INT32_MIN) {
    throw Error(ErrorCode::bmp_malformed_header, "invalid dimensions " +
                                                     std::to_string(raw_width) + "x" +
                                                     std::to_string(raw_height));
  }
  if (planes != 1) {
    throw Error(ErrorCode::bmp_malformed_header, "plane count " + std::to_string(planes));
  }
  if (compression != kBiRgb) {
    throw Error(ErrorCode::bmp_unsupported_compression,
                "compression method " + std::to_string(compression));
  }
  if (depth != 1 && depth != 4 && depth != 8 && depth != 24) {
    throw Error(ErrorCode::bmp_unsupported_bit_depth, std::to_string(depth) + " bits per pixel");
  }

  const auto width = static_cast<std::size_t>(raw_width);
  const bool top_down = raw_height < 0;
  const auto height = static_cast<std::size_t>(top_down ? -static_cast<std::int64_t>(raw_height)
                                                        : raw_height);

  // Palette entries are BGRx quads directly after the info header.
  std::vector<std::uint8_t> palette;
  if (depth <= 8) {
    const std::size_t max_entries = std::size_t{1} << depth;
    const std::size_t entries = colors_used == 0 ? max_entries : colors_used;
    if (entries > max_entries) {
      throw Error(ErrorCode::bmp_malformed_header,
                  "palette of " + std::to_string(entries) + " entries for " +
                      std::to_string(depth) + "-bit image");
    }
    const std::size_t start = kFileHeaderSize + info_size;
    if (start + 4 * entries > bytes.size() || start + 4 * entries > pixel_offset) {
      throw Error(ErrorCode::bmp_malformed_header, "palette overruns the file or pixel data");
    }
    palette.reserve(entries);
    for (std::size_t k = 0; k < entries; ++k) {
      const std::size_t at = start + 4 * k;
      palette.push_back(luma(bytes[at + 2], bytes[at + 1], bytes[at]));
    }
  }

  const std::size_t stride = ((width * depth + 31) / 32) * 4;
  if (pixel_offset > bytes.size() || (bytes.size() - pixel_offset) / stride < height) {
    throw Error(ErrorCode::bmp_truncated,
                "need " + std::to_string(stride * height) + " pixel bytes at offset " +
                    std::to_string(pixel_offset) + ", file has " + std::to_string(bytes.size()));
  }

  std::vector<std::uint8_t> values(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t stored_row = top_down ? y : height - 1 - y;
    const auto row = bytes.subspan(pixel_offset + stored_row * stride, stride);
    for (std::size_t x = 0; x < width; ++x) {
      std::uint8_t value = 0;
      if (depth == 24) {
        value = luma(row[3 * x + 2], row[3 * x + 1], row[3 * x]);
      } else {
        const std::size_t bit = x * depth;
        const unsigned shift = 8 - depth - static_cast<unsigned>(bit % 8);
        const unsigned index = (row[bit / 8] >> shift) & ((1u << depth) - 1);
        if (index >= palette.size()) {
          throw Error(ErrorCode::bmp_palette_index_out_of_range,
                      "index " + std::to_string(index) + " at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ") with " + std::to_string(palette.size()) +
                          " palette entries");
        }
        value = palette[index];
      }
      values[y * width + x] = value;
    }
  }
  return PixelGrid(width, height, std::move(values));
}

}  // namespace amn
