#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "amn/error.hpp"
#include "amn/pattern.hpp"

namespace amn {

/// n x n integer weights; row i is an input node, column j an output node.
class WeightMatrix {
 public:
  using Weight = std::int32_t;

  WeightMatrix() = default;

  std::size_t dim() const noexcept { return n_; }
  Weight operator()(std::size_t i, std::size_t j) const noexcept { return w_[i * n_ + j]; }
  Weight& operator()(std::size_t i, std::size_t j) noexcept { return w_[i * n_ + j]; }
  std::span<const Weight> row(std::size_t i) const noexcept { return {w_.data() + i * n_, n_}; }
  std::span<Weight> row(std::size_t i) noexcept { return {w_.data() + i * n_, n_}; }
  std::span<const Weight> data() const noexcept { return w_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;
  friend WeightMatrix zero_weights(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<Weight> w_;
};

using Activation = std::int64_t;
using ActivationVector = std::vector<Activation>;

inline WeightMatrix zero_weights(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "weight matrix dimension must be >= 1");
  WeightMatrix w;
  w.n_ = n;
  w.w_.assign(n * n, 0);
  return w;
}

namespace core_detail {

inline void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + " has n=" +
                                                   std::to_string(got) + ", expected n=" +
                                                   std::to_string(expected));
  }
}

// w_ij += input_i * target_j for rows [begin, end).
inline void accumulate_rows(WeightMatrix& w, const Pattern& input, const Pattern& target,
                            std::size_t begin, std::size_t end) {
  const auto t = target.cells();
  for (std::size_t i = begin; i < end; ++i) {
    const WeightMatrix::Weight x = input[i];
    auto r = w.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += x * t[j];
  }
}

// a_j = sum_i key_i * w_ij for columns [begin, end); rows walked outermost so
// the matrix is read contiguously. Integer sums make the order irrelevant.
inline void accumulate_columns(const WeightMatrix& w, const Pattern& key, std::span<Activation> a,
                               std::size_t begin, std::size_t end) {
  for (std::size_t j = begin; j < end; ++j) a[j] = 0;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    const Activation x = key[i];
    const auto r = w.row(i);
    for (std::size_t j = begin; j < end; ++j) a[j] += x * r[j];
  }
}

}  // namespace core_detail

/// Hebbian update: w_ij += input_i * target_j.
inline WeightMatrix train_pair(WeightMatrix w, const Pattern& input, const Pattern& target) {
  core_detail::require_dim(w.dim(), input.size(), "input");
  core_detail::require_dim(w.dim(), target.size(), "target");
  core_detail::accumulate_rows(w, input, target, 0, w.dim());
  return w;
}

/// Auto-associative superposition: sum of p p^T over the list.
inline WeightMatrix store_patterns(std::span<const Pattern> patterns) {
  if (patterns.empty()) throw Error(ErrorCode::empty_input, "no patterns to store");
  const std::size_t n = patterns.front().size();
  auto w = zero_weights(n);
  for (const auto& p : patterns) {
    core_detail::require_dim(n, p.size(), "stored pattern");
    core_detail::accumulate_rows(w, p, p, 0, n);
  }
  return w;
}

inline ActivationVector net_input(const WeightMatrix& w, const Pattern& key) {
  core_detail::require_dim(w.dim(), key.size(), "key");
  ActivationVector a(w.dim());
  core_detail::accumulate_columns(w, key, a, 0, w.dim());
  return a;
}

/// Strict sign: +1 iff a_j > 0, so zero activation lands on -1.
inline Pattern threshold(std::span<const Activation> a, std::size_t width, std::size_t height) {
  std::vector<Pattern::Cell> cells;
  cells.reserve(a.size());
  for (Activation v : a) cells.push_back(v > 0 ? 1 : -1);
  return Pattern(width, height, std::move(cells));
}

inline Pattern threshold(std::span<const Activation> a) { return threshold(a, a.size(), 1); }

/// One synchronous pass; the result takes the key's shape.
inline Pattern recall(const WeightMatrix& w, const Pattern& key) {
  return threshold(net_input(w, key), key.width(), key.height());
}

/// Agreement count over n, kept as an exact rational. percent() and
/// hundredths() are derived views.
struct MatchScore {
  std::size_t agreements = 0;
  std::size_t total = 1;

  double percent() const noexcept {
    return 100.0 * static_cast<double>(agreements) / static_cast<double>(total);
  }

  // round(10000 * agreements / total), half up, in integers.
  std::uint64_t hundredths() const noexcept {
    return (20000ull * agreements + total) / (2ull * total);
  }

  std::string str() const {
    const auto h = hundredths();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%02llu", static_cast<unsigned long long>(h / 100),
                  static_cast<unsigned long long>(h % 100));
    return buf;
  }

  friend std::strong_ordering operator<=>(const MatchScore& a, const MatchScore& b) noexcept {
    const auto lhs = static_cast<unsigned __int128>(a.agreements) * b.total;
    const auto rhs = static_cast<unsigned __int128>(b.agreements) * a.total;
    return lhs <=> rhs;
  }
  friend bool operator==(const MatchScore& a, const MatchScore& b) noexcept {
    return (a <=> b) == 0;
  }
};

inline MatchScore match_score(const Pattern& a, const Pattern& b) {
  core_detail::require_dim(a.size(), b.size(), "compared pattern");
  std::size_t agree = 0;
  for (std::size_t j = 0; j < a.size(); ++j) agree += a[j] == b[j];
  return {agree, a.size()};
}

}  // namespace amn
