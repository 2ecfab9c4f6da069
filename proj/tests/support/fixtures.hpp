#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "amn/pattern.hpp"
#include "oracle.hpp"

namespace fixtures {

inline oracle::Vec to_vec(const amn::Pattern& p) {
  return oracle::Vec(p.cells().begin(), p.cells().end());
}

inline amn::Pattern from_vec(const oracle::Vec& v, std::size_t width, std::size_t height) {
  return amn::Pattern(width, height, std::vector<amn::Pattern::Cell>(v.begin(), v.end()));
}

inline amn::Pattern from_vec(const oracle::Vec& v) { return from_vec(v, v.size(), 1); }

inline amn::Pattern random_pattern(std::mt19937_64& rng, std::size_t width, std::size_t height) {
  std::bernoulli_distribution coin(0.5);
  std::vector<amn::Pattern::Cell> cells(width * height);
  for (auto& c : cells) c = coin(rng) ? 1 : -1;
  return amn::Pattern(width, height, std::move(cells));
}

// Sylvester construction: rows of a k x k +-1 Hadamard matrix, k a power of 2.
inline std::vector<oracle::Vec> hadamard_rows(std::size_t k) {
  std::vector<oracle::Vec> h{{1}};
  while (h.size() < k) {
    const std::size_t m = h.size();
    std::vector<oracle::Vec> next(2 * m, oracle::Vec(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        next[i][j] = h[i][j];
        next[i][j + m] = h[i][j];
        next[i + m][j] = h[i][j];
        next[i + m][j + m] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

inline std::vector<amn::LabeledPattern> hadamard_store(std::size_t k) {
  std::vector<amn::LabeledPattern> out;
  const auto rows = hadamard_rows(k);
  for (std::size_t r = 0; r < k; ++r) {
    out.push_back({std::string(1, static_cast<char>('a' + r)), from_vec(rows[r])});
  }
  return out;
}

inline std::vector<std::string> alphabet_labels() {
  std::vector<std::string> labels;
  for (char c = 'A'; c <= 'Z'; ++c) labels.emplace_back(1, c);
  for (char c = 'a'; c <= 'z'; ++c) labels.emplace_back(1, c);
  return labels;
}

// 52 labeled random glyphs (A..Z then a..z) of the given shape.
inline std::vector<amn::LabeledPattern> synthetic_alphabet(std::uint64_t seed,
                                                           std::size_t width = 31,
                                                           std::size_t height = 39) {
  std::mt19937_64 rng(seed);
  std::vector<amn::LabeledPattern> out;
  for (auto& label : alphabet_labels()) {
    out.push_back({label, random_pattern(rng, width, height)});
  }
  return out;
}

struct Rgb {
  std::uint8_t r, g, b;
};

inline void put_u16(std::vector<std::uint8_t>& b, std::size_t at, std::uint16_t v) {
  b[at] = v & 0xff;
  b[at + 1] = v >> 8;
}

inline void put_u32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) b[at + k] = (v >> (8 * k)) & 0xff;
}

// Minimal BITMAPINFOHEADER writer. For depth <= 8 `pixels` holds palette
// indices; for depth 24 `pixels` holds gray levels written as R=G=B unless
// `rgb` is supplied.
inline std::vector<std::uint8_t> encode_bmp(std::size_t width, std::size_t height,
                                            const std::vector<std::uint8_t>& pixels, int depth,
                                            const std::vector<Rgb>& palette, bool top_down,
                                            const std::vector<Rgb>& rgb = {}) {
  const std::size_t stride = ((width * depth + 31) / 32) * 4;
  const std::size_t offset = 14 + 40 + 4 * palette.size();
  std::vector<std::uint8_t> b(offset + stride * height, 0);
  b[0] = 'B';
  b[1] = 'M';
  put_u32(b, 2, static_cast<std::uint32_t>(b.size()));
  put_u32(b, 10, static_cast<std::uint32_t>(offset));
  put_u32(b, 14, 40);
  put_u32(b, 18, static_cast<std::uint32_t>(width));
  const auto h = static_cast<std::int32_t>(height);
  put_u32(b, 22, static_cast<std::uint32_t>(top_down ? -h : h));
  put_u16(b, 26, 1);
  put_u16(b, 28, static_cast<std::uint16_t>(depth));
  put_u32(b, 34, static_cast<std::uint32_t>(stride * height));
  put_u32(b, 46, static_cast<std::uint32_t>(palette.size()));
  for (std::size_t k = 0; k < palette.size(); ++k) {
    b[54 + 4 * k] = palette[k].b;
    b[54 + 4 * k + 1] = palette[k].g;
    b[54 + 4 * k + 2] = palette[k].r;
  }
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t stored = top_down ? y : height - 1 - y;
    std::uint8_t* row = b.data() + offset + stored * stride;
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t idx = y * width + x;
      if (depth == 24) {
        const Rgb c = rgb.empty() ? Rgb{pixels[idx], pixels[idx], pixels[idx]} : rgb[idx];
        row[3 * x] = c.b;
        row[3 * x + 1] = c.g;
        row[3 * x + 2] = c.r;
      } else {
        const std::size_t bit = x * depth;
        const int shift = 8 - depth - static_cast<int>(bit % 8);
        row[bit / 8] |= static_cast<std::uint8_t>(pixels[idx] << shift);
      }
    }
  }
  return b;
}

inline std::vector<Rgb> gray_palette(int depth) {
  const int count = 1 << depth;
  std::vector<Rgb> p;
  for (int k = 0; k < count; ++k) {
    const auto v = static_cast<std::uint8_t>(k * 255 / (count - 1));
    p.push_back({v, v, v});
  }
  return p;
}

// Ink (+1) is black, background (-1) is white, at any supported depth.
inline std::vector<std::uint8_t> pattern_to_bmp(const amn::Pattern& p, int depth,
                                                bool top_down = false) {
  std::vector<std::uint8_t> px(p.size());
  const std::uint8_t white = depth == 24 ? 255 : static_cast<std::uint8_t>((1 << depth) - 1);
  for (std::size_t k = 0; k < p.size(); ++k) px[k] = p[k] > 0 ? 0 : white;
  const auto palette = depth == 24 ? std::vector<Rgb>{} : gray_palette(depth);
  return encode_bmp(p.width(), p.height(), px, depth, palette, top_down);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("amn-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
