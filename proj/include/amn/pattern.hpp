#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amn/error.hpp"

namespace amn {

/// Decoded image: row-major, top-down intensities in [0, 255].
class PixelGrid {
 public:
  PixelGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> values)
      : width_(width), height_(height), values_(std::move(values)) {
    if (width_ == 0 || height_ == 0) {
      throw Error(ErrorCode::invalid_argument, "pixel grid dimensions must be >= 1");
    }
    if (values_.size() != width_ * height_) {
      throw Error(ErrorCode::dimension_mismatch,
                  "pixel grid holds " + std::to_string(values_.size()) + " values, expected " +
                      std::to_string(width_ * height_));
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const std::uint8_t> values() const noexcept { return values_; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return values_.at(y * width_ + x); }

  friend bool operator==(const PixelGrid&, const PixelGrid&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> values_;
};

/// Bipolar pattern: every cell is +1 or -1, row-major with width/height
/// metadata. Serves as network input, stored target and recalled output.
class Pattern {
 public:
  using Cell = std::int8_t;

  Pattern(std::size_t width, std::size_t height, std::vector<Cell> cells)
      : width_(width), height_(height), cells_(std::move(cells)) {
    if (width_ == 0 || height_ == 0) {
      throw Error(ErrorCode::invalid_argument, "pattern dimensions must be >= 1");
    }
    if (cells_.size() != width_ * height_) {
      throw Error(ErrorCode::dimension_mismatch,
                  "pattern holds " + std::to_string(cells_.size()) + " cells, expected " +
                      std::to_string(width_ * height_));
    }
    for (Cell c : cells_) {
      if (c != 1 && c != -1) {
        throw Error(ErrorCode::invalid_argument,
                    "pattern cell " + std::to_string(int{c}) + " is not +1 or -1");
      }
    }
  }

  // A width-n, height-1 pattern; handy for small hand-written vectors.
  static Pattern row(std::initializer_list<int> values) {
    std::vector<Cell> cells;
    for (int v : values) cells.push_back(v == 1 ? Cell{1} : v == -1 ? Cell{-1} : Cell{0});
    const std::size_t n = cells.size();
    return Pattern(n, 1, std::move(cells));
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return cells_.size(); }
  std::span<const Cell> cells() const noexcept { return cells_; }
  Cell operator[](std::size_t i) const noexcept { return cells_[i]; }

  Pattern negated() const {
    Pattern out = *this;
    for (Cell& c : out.cells_) c = static_cast<Cell>(-c);
    return out;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Cell> cells_;
};

struct BinarizePolicy {
  int threshold = 128;
  bool foreground_is_dark = true;
};

struct LabeledPattern {
  std::string label;
  Pattern pattern;
};

/// Ink (intensity < threshold) maps to +1 under the default polarity.
inline Pattern pixels_to_pattern(const PixelGrid& grid, const BinarizePolicy& policy = {}) {
  if (policy.threshold < 0 || policy.threshold > 255) {
    throw Error(ErrorCode::invalid_argument,
                "binarize threshold " + std::to_string(policy.threshold) + " outside [0, 255]");
  }
  std::vector<Pattern::Cell> cells;
  cells.reserve(grid.size());
  for (std::uint8_t v : grid.values()) {
    const bool dark = v < policy.threshold;
    cells.push_back(dark == policy.foreground_is_dark ? 1 : -1);
  }
  return Pattern(grid.width(), grid.height(), std::move(cells));
}

namespace detail {

// Unbiased draw in [0, bound) by rejection. Kept local instead of
// std::uniform_int_distribution so the sequence is identical across
// standard library implementations.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace detail

/// Flips exactly round(rate * n) distinct cells, picked by a seeded partial
/// Fisher-Yates shuffle. Same inputs and seed give the same output.
inline Pattern flip_noise(const Pattern& p, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "flip rate must lie in [0, 1]");
  }
  const std::size_t n = p.size();
  const auto flips = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < flips; ++k) {
    const auto pick = k + detail::bounded_draw(rng, n - k);
    std::swap(order[k], order[pick]);
  }

  std::vector<Pattern::Cell> cells(p.cells().begin(), p.cells().end());
  for (std::size_t k = 0; k < flips; ++k) {
    cells[order[k]] = static_cast<Pattern::Cell>(-cells[order[k]]);
  }
  return Pattern(p.width(), p.height(), std::move(cells));
}

}  // namespace amn
