#pragma once

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "amn/core.hpp"
#include "amn/error.hpp"
#include "amn/pattern.hpp"

namespace amn {

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Per-worker half-open ranges; together a disjoint cover of [0, n).
struct IndexAssignment {
  std::vector<std::vector<IndexRange>> workers;
};

/// Positive integer from AMN_THREADS, if set and well-formed.
inline std::optional<std::size_t> threads_from_env() {
  const char* raw = std::getenv("AMN_THREADS");
  if (raw == nullptr) return std::nullopt;
  const std::string_view s(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) {
    throw Error(ErrorCode::invalid_argument,
                "AMN_THREADS must be a positive integer, got '" + std::string(s) + "'");
  }
  return value;
}

inline std::size_t hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Flag, then AMN_THREADS, then hardware parallelism.
inline std::size_t resolve_threads(std::optional<std::size_t> flag = std::nullopt) {
  if (flag) return *flag;
  if (auto env = threads_from_env()) return *env;
  return hardware_threads();
}

/// Worker count and static chunk size. Without an explicit chunk the block
/// size is ceil(n / threads), one block per worker.
class ExecPlan {
 public:
  explicit ExecPlan(std::size_t threads, std::optional<std::size_t> chunk = std::nullopt)
      : threads_(threads), chunk_(chunk) {
    if (threads_ == 0) throw Error(ErrorCode::invalid_argument, "threads must be >= 1");
    if (chunk_ && *chunk_ == 0) throw Error(ErrorCode::invalid_argument, "chunk must be >= 1");
  }

  static ExecPlan serial() { return ExecPlan(1); }

  std::size_t threads() const noexcept { return threads_; }
  std::optional<std::size_t> chunk() const noexcept { return chunk_; }

  std::size_t chunk_for(std::size_t n) const noexcept {
    if (chunk_) return *chunk_;
    const std::size_t c = (n + threads_ - 1) / threads_;
    return c == 0 ? 1 : c;
  }

 private:
  std::size_t threads_;
  std::optional<std::size_t> chunk_;
};

/// Static round-robin: consecutive blocks of `chunk` indices, block b goes
/// to worker b mod threads.
inline IndexAssignment partition_static(std::size_t n, const ExecPlan& plan) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot partition an empty range");
  const std::size_t chunk = plan.chunk_for(n);
  IndexAssignment out;
  out.workers.resize(plan.threads());
  std::size_t block = 0;
  for (std::size_t start = 0; start < n; start += chunk, ++block) {
    out.workers[block % plan.threads()].push_back({start, std::min(start + chunk, n)});
  }
  return out;
}

/// Fork-join over a static partition of [0, n): body(worker, range) runs for
/// every range on the worker that owns it. Worker 0 is the calling thread.
template <typename Body>
void parallel_for_static(std::size_t n, const ExecPlan& plan, Body&& body) {
  const auto assignment = partition_static(n, plan);
  auto run = [&](std::size_t worker) {
    for (const auto& r : assignment.workers[worker]) body(worker, r);
  };
  std::vector<std::jthread> team;
  for (std::size_t t = 1; t < assignment.workers.size(); ++t) {
    if (!assignment.workers[t].empty()) team.emplace_back(run, t);
  }
  run(0);
}

/// Rows of w are split across workers; each weight cell has one writer.
inline WeightMatrix par_train_pair(WeightMatrix w, const Pattern& input, const Pattern& target,
                                   const ExecPlan& plan) {
  core_detail::require_dim(w.dim(), input.size(), "input");
  core_detail::require_dim(w.dim(), target.size(), "target");
  parallel_for_static(w.dim(), plan, [&](std::size_t, IndexRange r) {
    core_detail::accumulate_rows(w, input, target, r.begin, r.end);
  });
  return w;
}

/// Output nodes are split across workers; each a_j is summed in full by the
/// worker that owns j, so there is no cross-worker reduction.
inline ActivationVector par_net_input(const WeightMatrix& w, const Pattern& key,
                                      const ExecPlan& plan) {
  core_detail::require_dim(w.dim(), key.size(), "key");
  ActivationVector a(w.dim());
  parallel_for_static(w.dim(), plan, [&](std::size_t, IndexRange r) {
    core_detail::accumulate_columns(w, key, a, r.begin, r.end);
  });
  return a;
}

inline Pattern par_recall(const WeightMatrix& w, const Pattern& key, const ExecPlan& plan) {
  return threshold(par_net_input(w, key, plan), key.width(), key.height());
}

}  // namespace amn
