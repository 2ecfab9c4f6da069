#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amn/core.hpp"
#include "amn/error.hpp"
#include "amn/parallel.hpp"
#include "amn/pattern.hpp"

namespace amn {

// superposed: one weight matrix holding every stored glyph, recall once and
// compare against each target.
// literal: per label, train on (key, target) alone and recall with the key.
// Bipolar arithmetic makes every literal score 100.
enum class Mode { superposed, literal };

inline std::string_view to_string(Mode m) {
  return m == Mode::superposed ? "superposed" : "literal";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "superposed") return Mode::superposed;
  if (s == "literal") return Mode::literal;
  throw Error(ErrorCode::invalid_argument, "unknown mode '" + std::string(s) + "'");
}

class RecognizerModel {
 public:
  const std::vector<LabeledPattern>& entries() const noexcept { return entries_; }
  const WeightMatrix& weights() const noexcept { return weights_; }
  Mode mode() const noexcept { return mode_; }
  std::size_t dim() const noexcept { return entries_.front().pattern.size(); }
  std::size_t width() const noexcept { return entries_.front().pattern.width(); }
  std::size_t height() const noexcept { return entries_.front().pattern.height(); }

  friend RecognizerModel build_model(std::vector<LabeledPattern> entries, Mode mode);

 private:
  std::vector<LabeledPattern> entries_;
  WeightMatrix weights_;  // empty in literal mode
  Mode mode_ = Mode::superposed;
};

inline RecognizerModel build_model(std::vector<LabeledPattern> entries,
                                   Mode mode = Mode::superposed) {
  if (entries.empty()) throw Error(ErrorCode::empty_input, "model needs at least one entry");
  std::set<std::string_view> labels;
  const auto& first = entries.front().pattern;
  for (const auto& e : entries) {
    if (e.label.empty()) throw Error(ErrorCode::invalid_argument, "empty label");
    if (!labels.insert(e.label).second) {
      throw Error(ErrorCode::manifest_duplicate_label, "'" + e.label + "'");
    }
    if (e.pattern.width() != first.width() || e.pattern.height() != first.height()) {
      throw Error(ErrorCode::dimension_mismatch, "entry '" + e.label + "' differs in shape");
    }
  }
  RecognizerModel model;
  model.mode_ = mode;
  if (mode == Mode::superposed) {
    std::vector<Pattern> patterns;
    patterns.reserve(entries.size());
    for (const auto& e : entries) patterns.push_back(e.pattern);
    model.weights_ = store_patterns(patterns);
  }
  model.entries_ = std::move(entries);
  return model;
}

struct RecognitionResult {
  std::string predicted;
  std::map<std::string, MatchScore> scores;
  Pattern recalled;
  std::size_t runs = 1;
  std::vector<std::int64_t> run_ns;

  const MatchScore& best() const { return scores.at(predicted); }

  /// Scores by descending match, ties in ascending label order.
  std::vector<std::pair<std::string, MatchScore>> ranked() const {
    std::vector<std::pair<std::string, MatchScore>> out(scores.begin(), scores.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
  }

  // Timing is excluded: identical inputs must compare equal.
  friend bool operator==(const RecognitionResult& a, const RecognitionResult& b) {
    return a.predicted == b.predicted && a.scores == b.scores && a.recalled == b.recalled &&
           a.runs == b.runs;
  }
};

namespace recognizer_detail {

// Highest score; std::map iterates labels ascending so the first maximum
// found is the lexicographically smallest tied label.
inline std::string argmax(const std::map<std::string, MatchScore>& scores) {
  auto best = scores.begin();
  for (auto it = scores.begin(); it != scores.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

inline Pattern recall_with(const WeightMatrix& w, const Pattern& key, const ExecPlan* plan) {
  return plan ? par_recall(w, key, *plan) : recall(w, key);
}

inline RecognitionResult recognize_impl(const RecognizerModel& model, const Pattern& key,
                                        const ExecPlan* plan) {
  core_detail::require_dim(model.dim(), key.size(), "key");
  RecognitionResult result{.predicted = {}, .scores = {}, .recalled = key, .runs = 1, .run_ns = {}};
  if (model.mode() == Mode::superposed) {
    result.recalled = recall_with(model.weights(), key, plan);
    for (const auto& e : model.entries()) {
      result.scores.emplace(e.label, match_score(result.recalled, e.pattern));
    }
    result.predicted = argmax(result.scores);
    return result;
  }

  std::map<std::string, Pattern> outputs;
  for (const auto& e : model.entries()) {
    const auto zero = zero_weights(model.dim());
    const auto w = plan ? par_train_pair(zero, key, e.pattern, *plan)
                        : train_pair(zero, key, e.pattern);
    auto y = recall_with(w, key, plan);
    result.scores.emplace(e.label, match_score(y, e.pattern));
    outputs.emplace(e.label, std::move(y));
  }
  result.predicted = argmax(result.scores);
  result.recalled = outputs.at(result.predicted);
  return result;
}

}  // namespace recognizer_detail

/// Serial reference path.
inline RecognitionResult recognize(const RecognizerModel& model, const Pattern& key) {
  return recognizer_detail::recognize_impl(model, key, nullptr);
}

/// Same result as the serial path; kernels run under `plan`.
inline RecognitionResult recognize(const RecognizerModel& model, const Pattern& key,
                                   const ExecPlan& plan) {
  return recognizer_detail::recognize_impl(model, key, &plan);
}

/// Runs recognition `runs` times, timing each run. Scores are the mean over
/// runs, kept exact as (sum of agreements) / (runs * n).
inline RecognitionResult repeat_recognize(const RecognizerModel& model, const Pattern& key,
                                          std::size_t runs,
                                          std::optional<ExecPlan> plan = std::nullopt) {
  if (runs == 0) throw Error(ErrorCode::invalid_argument, "runs must be >= 1");
  using clock = std::chrono::steady_clock;
  std::optional<RecognitionResult> acc;
  std::vector<std::int64_t> times;
  times.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto t0 = clock::now();
    auto one = plan ? recognize(model, key, *plan) : recognize(model, key);
    const auto t1 = clock::now();
    times.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    if (!acc) {
      acc = std::move(one);
      continue;
    }
    for (auto& [label, score] : acc->scores) {
      const auto& s = one.scores.at(label);
      score.agreements += s.agreements;
      score.total += s.total;
    }
  }
  acc->runs = runs;
  acc->run_ns = std::move(times);
  acc->predicted = recognizer_detail::argmax(acc->scores);
  return std::move(*acc);
}

}  // namespace amn
