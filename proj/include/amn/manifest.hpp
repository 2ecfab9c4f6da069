#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "amn/amnpat.hpp"
#include "amn/bmp.hpp"
#include "amn/error.hpp"
#include "amn/pattern.hpp"

namespace amn {

namespace fs = std::filesystem;

inline std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::unreadable_file, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::unreadable_file, path.string());
  return bytes;
}

inline void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::unwritable_path, path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::unwritable_path, path.string());
}

/// Loads a BMP or AMNPAT file, chosen by magic bytes. BMPs are binarized with
/// `policy` and labeled by file stem; AMNPAT files keep their own label.
inline LabeledPattern load_pattern_file(const fs::path& path, const BinarizePolicy& policy = {}) {
  const auto bytes = read_file_bytes(path);
  const auto starts_with = [&](std::string_view magic) {
    return bytes.size() >= magic.size() && std::equal(magic.begin(), magic.end(), bytes.begin());
  };
  try {
    if (starts_with("BM")) {
      return {path.stem().string(), pixels_to_pattern(decode_bmp(bytes), policy)};
    }
    if (starts_with(kPatternMagic)) {
      auto [pattern, label] =
          read_pattern_text(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                             bytes.size()));
      return {std::move(label), std::move(pattern)};
    }
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
  throw Error(ErrorCode::unknown_file_format, path.string() + " is neither BMP nor AMNPAT");
}

namespace manifest_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

inline void check_store(const std::vector<LabeledPattern>& store, const std::string& where) {
  std::set<std::string> seen;
  for (std::size_t k = 0; k < store.size(); ++k) {
    const auto& e = store[k];
    if (e.label.empty()) throw Error(ErrorCode::invalid_argument, where + ": empty label");
    if (!seen.insert(e.label).second) {
      throw Error(ErrorCode::manifest_duplicate_label, where + ": '" + e.label + "'");
    }
    const auto& first = store.front().pattern;
    if (e.pattern.width() != first.width() || e.pattern.height() != first.height()) {
      throw Error(ErrorCode::dimension_mismatch,
                  where + ": entry " + std::to_string(k + 1) + " ('" + e.label + "') is " +
                      std::to_string(e.pattern.width()) + "x" +
                      std::to_string(e.pattern.height()) + ", expected " +
                      std::to_string(first.width()) + "x" + std::to_string(first.height()));
    }
  }
}

}  // namespace manifest_detail

/// Reads a `label,path` CSV. Relative paths resolve against the manifest's
/// directory and the manifest label overrides any label stored in the file.
inline std::vector<LabeledPattern> load_manifest(const fs::path& path,
                                                 const BinarizePolicy& policy = {}) {
  using manifest_detail::trim;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::unreadable_file, path.string());

  std::string line;
  if (!std::getline(in, line) || trim(line) != "label,path") {
    throw Error(ErrorCode::manifest_format, path.string() + ": header must be 'label,path'");
  }
  const fs::path base = path.parent_path();
  std::vector<LabeledPattern> store;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::manifest_format, where + ": expected 'label,path'");
    }
    std::string label(trim(row.substr(0, comma)));
    fs::path file(std::string(trim(row.substr(comma + 1))));
    if (label.empty() || file.empty()) {
      throw Error(ErrorCode::manifest_format, where + ": empty label or path");
    }
    if (file.is_relative()) file = base / file;
    auto entry = load_pattern_file(file, policy);
    entry.label = std::move(label);

    if (!store.empty()) {
      const auto& first = store.front().pattern;
      if (entry.pattern.width() != first.width() || entry.pattern.height() != first.height()) {
        throw Error(ErrorCode::dimension_mismatch,
                    where + ": '" + entry.label + "' is " + std::to_string(entry.pattern.width()) +
                        "x" + std::to_string(entry.pattern.height()) + ", store is " +
                        std::to_string(first.width()) + "x" + std::to_string(first.height()));
      }
      const bool dup = std::any_of(store.begin(), store.end(),
                                   [&](const auto& e) { return e.label == entry.label; });
      if (dup) {
        throw Error(ErrorCode::manifest_duplicate_label, where + ": '" + entry.label + "'");
      }
    }
    store.push_back(std::move(entry));
  }
  if (store.empty()) throw Error(ErrorCode::manifest_empty_store, path.string());
  return store;
}

/// Every regular file in `dir`, in path order, loaded with load_pattern_file.
inline std::vector<LabeledPattern> load_pattern_dir(const fs::path& dir,
                                                    const BinarizePolicy& policy = {}) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::unreadable_file, dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledPattern> out;
  for (const auto& f : files) out.push_back(load_pattern_file(f, policy));
  if (out.empty()) throw Error(ErrorCode::empty_input, dir.string() + " holds no pattern files");
  manifest_detail::check_store(out, dir.string());
  return out;
}

/// A manifest CSV or a directory of pattern files.
inline std::vector<LabeledPattern> load_patterns(const fs::path& source,
                                                 const BinarizePolicy& policy = {}) {
  std::error_code ec;
  return fs::is_directory(source, ec) ? load_pattern_dir(source, policy)
                                      : load_manifest(source, policy);
}

}  // namespace amn
