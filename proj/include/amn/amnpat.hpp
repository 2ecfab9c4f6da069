#pragma once

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amn/error.hpp"
#include "amn/pattern.hpp"

namespace amn {

// AMNPAT v1: "AMNPAT 1 <width> <height> <label>\n" followed by `height`
// lines of `width` space-separated tokens from {1, -1}.
inline constexpr std::string_view kPatternMagic = "AMNPAT";
inline constexpr int kPatternVersion = 1;

inline std::string write_pattern_text(const Pattern& p, std::string_view label) {
  std::string out;
  out.reserve(32 + label.size() + 3 * p.size());
  out += kPatternMagic;
  out += ' ';
  out += std::to_string(kPatternVersion);
  out += ' ';
  out += std::to_string(p.width());
  out += ' ';
  out += std::to_string(p.height());
  out += ' ';
  out += label;
  out += '\n';
  for (std::size_t y = 0; y < p.height(); ++y) {
    for (std::size_t x = 0; x < p.width(); ++x) {
      if (x != 0) out += ' ';
      out += p[y * p.width() + x] > 0 ? "1" : "-1";
    }
    out += '\n';
  }
  return out;
}

namespace amnpat_detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const auto end = std::min(line.find(' ', pos), line.size());
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

inline bool parse_size(std::string_view s, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace amnpat_detail

inline std::pair<Pattern, std::string> read_pattern_text(std::string_view text) {
  using namespace amnpat_detail;
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::pattern_bad_magic, "empty input");

  const auto header = split_spaces(lines[0]);
  if (header.empty() || header[0] != kPatternMagic) {
    throw Error(ErrorCode::pattern_bad_magic, "first token is not AMNPAT");
  }
  if (header.size() < 2 || header[1] != std::to_string(kPatternVersion)) {
    throw Error(ErrorCode::pattern_version_mismatch,
                "expected version " + std::to_string(kPatternVersion) + ", got '" +
                    (header.size() < 2 ? std::string() : std::string(header[1])) + "'");
  }
  std::size_t width = 0;
  std::size_t height = 0;
  if (header.size() != 5 || !parse_size(header[2], width) || !parse_size(header[3], height) ||
      width == 0 || height == 0) {
    throw Error(ErrorCode::pattern_bad_header, "expected 'AMNPAT 1 <width> <height> <label>'");
  }
  std::string label(header[4]);

  std::vector<Pattern::Cell> cells;
  cells.reserve(width * height);
  std::size_t rows = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto tokens = split_spaces(lines[li]);
    if (tokens.empty()) continue;
    ++rows;
    if (rows > height) {
      throw Error(ErrorCode::pattern_shape_mismatch,
                  "more than the declared " + std::to_string(height) + " rows");
    }
    if (tokens.size() != width) {
      throw Error(ErrorCode::pattern_shape_mismatch,
                  "row " + std::to_string(rows) + " has " + std::to_string(tokens.size()) +
                      " tokens, expected " + std::to_string(width));
    }
    for (const auto tok : tokens) {
      if (tok == "1") {
        cells.push_back(1);
      } else if (tok == "-1") {
        cells.push_back(-1);
      } else {
        throw Error(ErrorCode::pattern_invalid_token,
                    "'" + std::string(tok) + "' on row " + std::to_string(rows));
      }
    }
  }
  if (rows != height) {
    throw Error(ErrorCode::pattern_shape_mismatch,
                "found " + std::to_string(rows) + " rows, expected " + std::to_string(height));
  }
  return {Pattern(width, height, std::move(cells)), std::move(label)};
}

}  // namespace amn
