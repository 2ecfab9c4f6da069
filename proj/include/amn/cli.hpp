#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "amn/amnpat.hpp"
#include "amn/bench.hpp"
#include "amn/bmp.hpp"
#include "amn/error.hpp"
#include "amn/manifest.hpp"
#include "amn/parallel.hpp"
#include "amn/recognizer.hpp"

namespace amn::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDataError = 3,
  kInvariantBreach = 4,
};

struct CliConfig {
  std::string store;
  std::string key;
  std::string keys;
  std::vector<std::string> inputs;
  std::string mode = "superposed";
  std::optional<std::size_t> threads;
  std::optional<std::size_t> chunk;
  std::size_t runs = 5;
  std::vector<double> rates{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::optional<std::uint64_t> seed;
  int threshold = 128;
  bool light_foreground = false;
  std::string out = ".";
};

namespace detail {

// Raised while resolving flags, before any work starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline BinarizePolicy policy(const CliConfig& c) {
  if (c.threshold < 0 || c.threshold > 255) throw UsageError("--threshold must lie in [0, 255]");
  return {c.threshold, !c.light_foreground};
}

inline ExecPlan plan(const CliConfig& c) {
  try {
    return ExecPlan(resolve_threads(c.threads), c.chunk);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline Mode mode(const CliConfig& c) {
  try {
    return parse_mode(c.mode);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline void require_runs(const CliConfig& c) {
  if (c.runs == 0) throw UsageError("--runs must be >= 1");
}

inline bool is_bmp_name(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext == ".bmp";
}

inline int cmd_ingest(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto pol = policy(c);
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& in : c.inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && is_bmp_name(e.path())) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  if (files.empty()) {
    err << "error: no inputs\n";
    return kDataError;
  }
  std::error_code ec;
  fs::create_directories(c.out, ec);

  std::size_t failed = 0;
  for (const auto& f : files) {
    try {
      const auto grid = decode_bmp(read_file_bytes(f));
      const auto pattern = pixels_to_pattern(grid, pol);
      const auto label = f.stem().string();
      const auto target = fs::path(c.out) / (label + ".txt");
      write_text_file(target, write_pattern_text(pattern, label));
      out << f.string() << " -> " << target.string() << " label=" << label << ' '
          << pattern.width() << 'x' << pattern.height() << '\n';
    } catch (const Error& e) {
      ++failed;
      err << "error: " << f.string() << ": " << e.what() << '\n';
    }
  }
  out << "ingested " << files.size() - failed << " of " << files.size() << " files\n";
  return failed == 0 ? kOk : kDataError;
}

inline int cmd_recognize(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto pol = policy(c);
  const auto m = mode(c);
  const auto p = plan(c);
  require_runs(c);
  if (c.store.empty() || c.key.empty()) throw UsageError("recognize needs --store and --key");

  const auto model = build_model(load_patterns(c.store, pol), m);
  const auto key = load_pattern_file(c.key, pol);
  if (m == Mode::literal) {
    err << "note: literal mode trains each label on the key itself; every score is 100.00 by "
           "construction and the tie goes to the smallest label\n";
  }
  const auto result = repeat_recognize(model, key.pattern, c.runs, p);
  out << "predicted " << result.predicted << ' ' << result.best().str() << '\n';
  for (const auto& [label, score] : result.ranked()) out << label << ' ' << score.str() << '\n';
  return kOk;
}

inline int cmd_bench(const CliConfig& c, std::ostream& out, std::ostream&) {
  const auto pol = policy(c);
  const auto m = mode(c);
  const auto p = plan(c);
  require_runs(c);
  if (c.store.empty() || c.keys.empty()) throw UsageError("bench needs --store and --keys");

  const auto model = build_model(load_patterns(c.store, pol), m);
  const auto keys = load_patterns(c.keys, pol);
  const auto rows = run_benchmark(model, keys, p, c.runs);

  const std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  write_report_csv(rows, dir / "report.csv");
  write_matching_levels_csv(rows, dir / "matching_levels.csv");
  write_speedup_csv(rows, dir / "speedup.csv");

  std::size_t correct = 0;
  MatchScore best{0, 0};
  double serial = 0;
  double parallel = 0;
  double speedup = 0;
  for (const auto& r : rows) {
    correct += r.correct();
    best.agreements += r.match.agreements / r.runs;
    best.total += r.match.total / r.runs;
    serial += static_cast<double>(r.serial.median());
    parallel += static_cast<double>(r.parallel.median());
    speedup += r.speedup();
  }
  const auto count = static_cast<double>(rows.size());
  out << "keys " << rows.size() << '\n'
      << "threads " << p.threads() << " chunk " << p.chunk_for(model.dim()) << " runs " << c.runs
      << '\n'
      << "top1_accuracy " << csv_detail::fixed(static_cast<double>(correct) / count, 6) << '\n'
      << "mean_best_match " << best.str() << '\n'
      << "mean_serial_median_ns " << csv_detail::fixed(serial / count, 0) << '\n'
      << "mean_parallel_median_ns " << csv_detail::fixed(parallel / count, 0) << '\n'
      << "mean_speedup " << csv_detail::fixed(speedup / count, 4) << '\n'
      << "wrote " << (dir / "report.csv").string() << ", "
      << (dir / "matching_levels.csv").string() << ", " << (dir / "speedup.csv").string() << '\n';
  return kOk;
}

inline int cmd_noise_sweep(const CliConfig& c, std::ostream& out, std::ostream&) {
  const auto pol = policy(c);
  const auto m = mode(c);
  const auto p = plan(c);
  require_runs(c);
  if (c.store.empty()) throw UsageError("noise-sweep needs --store");
  if (!c.seed) throw UsageError("noise-sweep needs --seed");
  if (c.rates.empty()) throw UsageError("--rates is empty");
  for (double r : c.rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw UsageError("--rates values must lie in [0, 1]");
  }

  const auto model = build_model(load_patterns(c.store, pol), m);
  const auto points = noise_sweep(model, c.rates, *c.seed, p, c.runs);

  const std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  write_sweep_csv(points, dir / "sweep.csv");

  out << "rate accuracy mean_best_match\n";
  for (const auto& pt : points) {
    out << csv_detail::fixed(pt.rate, 4) << ' ' << csv_detail::fixed(pt.accuracy(), 6) << ' '
        << pt.mean_best.str() << '\n';
  }
  out << "wrote " << (dir / "sweep.csv").string() << '\n';
  return kOk;
}

}  // namespace detail

/// Entry point shared by the `amn` binary and the CLI tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Associative memory network character recognizer"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threshold", cfg.threshold, "Binarization threshold in [0, 255]")
        ->capture_default_str();
    sub->add_flag("--light-foreground", cfg.light_foreground,
                  "Treat bright pixels (>= threshold) as ink");
  };
  auto add_plan = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (default: AMN_THREADS or cores)");
    sub->add_option("--chunk", cfg.chunk, "Indices per static block (default: ceil(n/threads))");
    sub->add_option("--runs", cfg.runs, "Repetitions per key")->capture_default_str();
    sub->add_option("--mode", cfg.mode, "superposed | literal")->capture_default_str();
  };

  auto* ingest = app.add_subcommand("ingest", "Convert BMP glyphs to AMNPAT text files");
  ingest->add_option("inputs", cfg.inputs, "BMP files or directories")->required();
  ingest->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_common(ingest);

  auto* rec = app.add_subcommand("recognize", "Rank a key glyph against the stored alphabet");
  rec->add_option("--store", cfg.store, "Store manifest CSV or directory")->required();
  rec->add_option("--key", cfg.key, "Key BMP or AMNPAT file")->required();
  add_common(rec);
  add_plan(rec);

  auto* bench = app.add_subcommand("bench", "Time serial vs parallel recognition, write CSVs");
  bench->add_option("--store", cfg.store, "Store manifest CSV or directory")->required();
  bench->add_option("--keys", cfg.keys, "Key manifest CSV or directory")->required();
  bench->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_common(bench);
  add_plan(bench);

  auto* sweep = app.add_subcommand("noise-sweep", "Accuracy under synthetic bit-flip noise");
  sweep->add_option("--store", cfg.store, "Store manifest CSV or directory")->required();
  sweep->add_option("--rates", cfg.rates, "Comma-separated flip rates")->delimiter(',');
  sweep->add_option("--seed", cfg.seed, "Noise seed")->required();
  sweep->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_common(sweep);
  add_plan(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest) return detail::cmd_ingest(cfg, out, err);
    if (*rec) return detail::cmd_recognize(cfg, out, err);
    if (*bench) return detail::cmd_bench(cfg, out, err);
    if (*sweep) return detail::cmd_noise_sweep(cfg, out, err);
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvariantBreach& e) {
    err << "internal invariant breach: " << e.what() << '\n';
    return kInvariantBreach;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace amn::cli
