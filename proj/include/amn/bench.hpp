#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "amn/core.hpp"
#include "amn/error.hpp"
#include "amn/manifest.hpp"
#include "amn/parallel.hpp"
#include "amn/pattern.hpp"
#include "amn/recognizer.hpp"

namespace amn {

/// Wall-clock samples in nanoseconds.
class TimingStats {
 public:
  explicit TimingStats(std::vector<std::int64_t> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw Error(ErrorCode::empty_input, "timing stats need samples");
    sorted_ = samples_;
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::span<const std::int64_t> samples() const noexcept { return samples_; }
  std::int64_t min() const noexcept { return sorted_.front(); }
  std::int64_t max() const noexcept { return sorted_.back(); }

  // Even counts average the two middle samples, rounding down.
  std::int64_t median() const noexcept {
    const std::size_t m = sorted_.size() / 2;
    if (sorted_.size() % 2 == 1) return sorted_[m];
    return sorted_[m - 1] + (sorted_[m] - sorted_[m - 1]) / 2;
  }

  double mean() const noexcept {
    const double sum = std::accumulate(sorted_.begin(), sorted_.end(), 0.0);
    return sum / static_cast<double>(sorted_.size());
  }

 private:
  std::vector<std::int64_t> samples_;
  std::vector<std::int64_t> sorted_;
};

struct ReportRow {
  std::string key_label;
  std::string predicted;
  MatchScore match;
  TimingStats serial;
  TimingStats parallel;
  std::size_t runs = 1;

  bool correct() const { return key_label == predicted; }

  // A zero-length median is clamped to 1 ns so the ratio stays finite.
  double speedup() const noexcept {
    return static_cast<double>(std::max<std::int64_t>(serial.median(), 1)) /
           static_cast<double>(std::max<std::int64_t>(parallel.median(), 1));
  }
};

/// Times `runs` serial and `runs` parallel recognitions per key after one
/// discarded warm-up of each. Any divergence between the two paths, or
/// between a run and the first run, throws InvariantBreach.
inline std::vector<ReportRow> run_benchmark(const RecognizerModel& model,
                                            std::span<const LabeledPattern> keys,
                                            const ExecPlan& plan, std::size_t runs = 5) {
  if (keys.empty()) throw Error(ErrorCode::empty_input, "no keys to benchmark");
  if (runs == 0) throw Error(ErrorCode::invalid_argument, "runs must be >= 1");
  for (const auto& k : keys) {
    core_detail::require_dim(model.dim(), k.pattern.size(), ("key '" + k.label + "'").c_str());
  }

  using clock = std::chrono::steady_clock;
  const auto elapsed = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
  };

  std::vector<ReportRow> rows;
  rows.reserve(keys.size());
  for (const auto& key : keys) {
    const auto reference = recognize(model, key.pattern);
    if (recognize(model, key.pattern, plan) != reference) {
      throw InvariantBreach("serial and parallel recognition diverge on key '" + key.label + "'");
    }

    std::vector<std::int64_t> serial_ns;
    std::vector<std::int64_t> parallel_ns;
    for (std::size_t r = 0; r < runs; ++r) {
      const auto t0 = clock::now();
      const auto s = recognize(model, key.pattern);
      const auto t1 = clock::now();
      serial_ns.push_back(elapsed(t0, t1));
      if (s != reference) {
        throw InvariantBreach("serial recognition is not deterministic on key '" + key.label + "'");
      }
    }
    for (std::size_t r = 0; r < runs; ++r) {
      const auto t0 = clock::now();
      const auto p = recognize(model, key.pattern, plan);
      const auto t1 = clock::now();
      parallel_ns.push_back(elapsed(t0, t1));
      if (p != reference) {
        throw InvariantBreach("serial and parallel recognition diverge on key '" + key.label +
                              "'");
      }
    }

    // Mean over identical runs must reproduce the single-run score.
    MatchScore mean = reference.best();
    mean.agreements *= runs;
    mean.total *= runs;
    if (mean != reference.best() || mean.str() != reference.best().str()) {
      throw InvariantBreach("mean-of-runs score drifted on key '" + key.label + "'");
    }

    rows.push_back(ReportRow{key.label, reference.predicted, mean, TimingStats(serial_ns),
                             TimingStats(parallel_ns), runs});
  }
  return rows;
}

struct SweepPoint {
  double rate = 0.0;
  std::size_t keys = 0;
  std::size_t correct = 0;
  MatchScore mean_best;  // summed agreements over keys * n

  double accuracy() const noexcept {
    return static_cast<double>(correct) / static_cast<double>(keys);
  }
};

/// For each rate, corrupts every stored pattern c with flip_noise(rate,
/// seed + c) and recognizes it under `plan`.
inline std::vector<SweepPoint> noise_sweep(const RecognizerModel& model,
                                           std::span<const double> rates, std::uint64_t seed,
                                           const ExecPlan& plan, std::size_t runs = 1) {
  for (double r : rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::invalid_argument, "rate outside [0, 1]");
  }
  std::vector<SweepPoint> out;
  for (double rate : rates) {
    SweepPoint point{.rate = rate, .keys = 0, .correct = 0, .mean_best = {0, 0}};
    const auto& entries = model.entries();
    for (std::size_t c = 0; c < entries.size(); ++c) {
      const auto key = flip_noise(entries[c].pattern, rate, seed + c);
      const auto result = repeat_recognize(model, key, runs, plan);
      ++point.keys;
      point.correct += result.predicted == entries[c].label;
      // Rescale this key's mean back to a per-run count over n.
      point.mean_best.agreements += result.best().agreements / runs;
      point.mean_best.total += result.best().total / runs;
    }
    out.push_back(point);
  }
  return out;
}

namespace csv_detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.emplace_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

inline std::vector<std::vector<std::string>> parse(std::string_view text,
                                                   std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorCode::manifest_format, "CSV header must be '" + std::string(header) + "'");
  }
  const auto columns = split(header).size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != columns) {
      throw Error(ErrorCode::manifest_format, "CSV row has " + std::to_string(cells.size()) +
                                                  " cells, expected " + std::to_string(columns));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

template <typename T>
T parse_number(const std::string& s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::manifest_format, "bad number '" + s + "'");
  }
  return value;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(ErrorCode::manifest_format, "bad boolean '" + s + "'");
}

}  // namespace csv_detail

inline constexpr std::string_view kReportHeader =
    "label,predicted,match_pct,correct,serial_median_ns,parallel_median_ns,speedup,runs";
inline constexpr std::string_view kMatchingLevelsHeader = "label,match_pct,correct";
inline constexpr std::string_view kSpeedupHeader =
    "label,serial_median_ns,parallel_median_ns,speedup";
inline constexpr std::string_view kSweepHeader = "rate,keys,accuracy,mean_match_pct";

inline std::string format_report_csv(std::span<const ReportRow> rows) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.key_label + ',' + r.predicted + ',' + r.match.str() + ',' +
           (r.correct() ? "true" : "false") + ',' + std::to_string(r.serial.median()) + ',' +
           std::to_string(r.parallel.median()) + ',' + csv_detail::fixed(r.speedup(), 6) + ',' +
           std::to_string(r.runs) + '\n';
  }
  return out;
}

inline std::string format_matching_levels_csv(std::span<const ReportRow> rows) {
  std::string out(kMatchingLevelsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.key_label + ',' + r.match.str() + ',' + (r.correct() ? "true" : "false") + '\n';
  }
  return out;
}

inline std::string format_speedup_csv(std::span<const ReportRow> rows) {
  std::string out(kSpeedupHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.key_label + ',' + std::to_string(r.serial.median()) + ',' +
           std::to_string(r.parallel.median()) + ',' + csv_detail::fixed(r.speedup(), 6) + '\n';
  }
  return out;
}

inline std::string format_sweep_csv(std::span<const SweepPoint> points) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& p : points) {
    out += csv_detail::fixed(p.rate, 4) + ',' + std::to_string(p.keys) + ',' +
           csv_detail::fixed(p.accuracy(), 6) + ',' + p.mean_best.str() + '\n';
  }
  return out;
}

namespace bench_detail {

inline void require_rows(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::empty_input, "no rows to write");
}

}  // namespace bench_detail

inline void write_report_csv(std::span<const ReportRow> rows, const std::filesystem::path& path) {
  bench_detail::require_rows(rows.size());
  write_text_file(path, format_report_csv(rows));
}

inline void write_matching_levels_csv(std::span<const ReportRow> rows,
                                      const std::filesystem::path& path) {
  bench_detail::require_rows(rows.size());
  write_text_file(path, format_matching_levels_csv(rows));
}

inline void write_speedup_csv(std::span<const ReportRow> rows,
                              const std::filesystem::path& path) {
  bench_detail::require_rows(rows.size());
  write_text_file(path, format_speedup_csv(rows));
}

inline void write_sweep_csv(std::span<const SweepPoint> points,
                            const std::filesystem::path& path) {
  bench_detail::require_rows(points.size());
  write_text_file(path, format_sweep_csv(points));
}

/// Scalar fields of one report CSV line, as parsed back from text.
struct ReportRecord {
  std::string label;
  std::string predicted;
  std::string match_pct;
  bool correct = false;
  std::int64_t serial_median_ns = 0;
  std::int64_t parallel_median_ns = 0;
  double speedup = 0.0;
  std::size_t runs = 0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline std::vector<ReportRecord> parse_report_csv(std::string_view text) {
  using namespace csv_detail;
  std::vector<ReportRecord> out;
  for (const auto& c : parse(text, kReportHeader)) {
    out.push_back({c[0], c[1], c[2], parse_bool(c[3]), parse_number<std::int64_t>(c[4]),
                   parse_number<std::int64_t>(c[5]), parse_number<double>(c[6]),
                   parse_number<std::size_t>(c[7])});
  }
  return out;
}

inline ReportRecord to_record(const ReportRow& r) {
  return {r.key_label,        r.predicted,         r.match.str(), r.correct(),
          r.serial.median(), r.parallel.median(), r.speedup(),   r.runs};
}

}  // namespace amn
