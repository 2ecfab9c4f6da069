#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amn {

// Every failure the library reports carries one of these codes so callers
// (and tests) can tell diagnostics apart without parsing messages.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  empty_input,

  bmp_malformed_header,
  bmp_unsupported_compression,
  bmp_unsupported_bit_depth,
  bmp_palette_index_out_of_range,
  bmp_truncated,

  pattern_bad_magic,
  pattern_version_mismatch,
  pattern_bad_header,
  pattern_invalid_token,
  pattern_shape_mismatch,

  manifest_format,
  manifest_duplicate_label,
  manifest_empty_store,
  unreadable_file,
  unknown_file_format,
  unwritable_path,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::empty_input: return "empty input";
    case ErrorCode::bmp_malformed_header: return "malformed BMP header";
    case ErrorCode::bmp_unsupported_compression: return "unsupported BMP compression";
    case ErrorCode::bmp_unsupported_bit_depth: return "unsupported BMP bit depth";
    case ErrorCode::bmp_palette_index_out_of_range: return "BMP palette index out of range";
    case ErrorCode::bmp_truncated: return "truncated BMP pixel data";
    case ErrorCode::pattern_bad_magic: return "bad AMNPAT magic";
    case ErrorCode::pattern_version_mismatch: return "AMNPAT version mismatch";
    case ErrorCode::pattern_bad_header: return "malformed AMNPAT header";
    case ErrorCode::pattern_invalid_token: return "invalid AMNPAT token";
    case ErrorCode::pattern_shape_mismatch: return "AMNPAT row/column count mismatch";
    case ErrorCode::manifest_format: return "malformed manifest";
    case ErrorCode::manifest_duplicate_label: return "duplicate label";
    case ErrorCode::manifest_empty_store: return "empty store";
    case ErrorCode::unreadable_file: return "unreadable file";
    case ErrorCode::unknown_file_format: return "unknown file format";
    case ErrorCode::unwritable_path: return "unwritable path";
  }
  return "unknown error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when serial and parallel paths disagree or a result breaks an
// internal invariant. Never a data problem.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace amn
