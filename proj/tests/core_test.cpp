#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "amn/core.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using amn::Pattern;
using amn::WeightMatrix;

namespace {

const oracle::Vec kA{1, -1, 1, -1};
const oracle::Vec kB{1, 1, -1, -1};

oracle::Mat to_mat(const WeightMatrix& w) {
  oracle::Mat m(w.dim(), std::vector<long long>(w.dim()));
  for (std::size_t i = 0; i < w.dim(); ++i) {
    for (std::size_t j = 0; j < w.dim(); ++j) m[i][j] = w(i, j);
  }
  return m;
}

WeightMatrix random_weights(std::mt19937_64& rng, std::size_t n) {
  auto w = amn::zero_weights(n);
  std::uniform_int_distribution<int> v(-60, 60);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = v(rng);
  }
  return w;
}

std::vector<long long> to_ll(const amn::ActivationVector& a) { return {a.begin(), a.end()}; }

}  // namespace

TEST(ZeroWeights, AllEntriesZero) {
  const auto w = amn::zero_weights(4);
  EXPECT_EQ(w.dim(), 4u);
  EXPECT_EQ(std::count(w.data().begin(), w.data().end(), 0), 16);
  const auto big = amn::zero_weights(1209);
  EXPECT_EQ(big.data().size(), 1209u * 1209u);
  EXPECT_TRUE(std::all_of(big.data().begin(), big.data().end(), [](int v) { return v == 0; }));
}

TEST(ZeroWeights, RejectsZeroDimension) { EXPECT_THROW(amn::zero_weights(0), amn::Error); }

TEST(TrainPair, SelfOuterProductMatchesOracle) {
  const auto w = amn::train_pair(amn::zero_weights(4), fixtures::from_vec(kA),
                                 fixtures::from_vec(kA));
  EXPECT_EQ(to_mat(w), oracle::outer(kA, kA));
  const oracle::Mat frozen{{1, -1, 1, -1}, {-1, 1, -1, 1}, {1, -1, 1, -1}, {-1, 1, -1, 1}};
  EXPECT_EQ(to_mat(w), frozen);
}

TEST(TrainPair, HeteroPairIsInputTimesTarget) {
  const auto w = amn::train_pair(amn::zero_weights(4), fixtures::from_vec(kA),
                                 fixtures::from_vec(kB));
  EXPECT_EQ(to_mat(w), oracle::outer(kA, kB));
  EXPECT_EQ(w(1, 0), -1);  // w_21 in one-based indexing
}

TEST(TrainPair, OppositeTargetsCancel) {
  std::mt19937_64 rng(1);
  const auto x = fixtures::random_pattern(rng, 5, 3);
  auto w = amn::train_pair(amn::zero_weights(x.size()), x, x);
  w = amn::train_pair(std::move(w), x, x.negated());
  EXPECT_EQ(w, amn::zero_weights(x.size()));
}

TEST(TrainPair, RejectsDimensionMismatch) {
  EXPECT_THROW(amn::train_pair(amn::zero_weights(3), Pattern::row({1, 1, 1}), Pattern::row({1})),
               amn::Error);
  EXPECT_THROW(amn::train_pair(amn::zero_weights(2), Pattern::row({1, 1, 1}),
                               Pattern::row({1, 1, 1})),
               amn::Error);
}

TEST(StorePatterns, SinglePatternEqualsTrainPair) {
  const std::vector<Pattern> ps{fixtures::from_vec(kA)};
  EXPECT_EQ(to_mat(amn::store_patterns(ps)), oracle::outer(kA, kA));
}

TEST(StorePatterns, TwoPatternChain) {
  const std::vector<Pattern> ps{fixtures::from_vec(kA), fixtures::from_vec(kB)};
  const auto w = amn::store_patterns(ps);
  EXPECT_EQ(to_mat(w), oracle::sum_outer({kA, kB}));
  const oracle::Mat frozen{{2, 0, 0, -2}, {0, 2, -2, 0}, {0, -2, 2, 0}, {-2, 0, 0, 2}};
  EXPECT_EQ(to_mat(w), frozen);
}

TEST(StorePatterns, RejectsEmptyAndMixedSizes) {
  EXPECT_THROW(amn::store_patterns(std::vector<Pattern>{}), amn::Error);
  const std::vector<Pattern> mixed{Pattern::row({1, 1}), Pattern::row({1})};
  EXPECT_THROW(amn::store_patterns(mixed), amn::Error);
}

TEST(StorePatterns, OrderIndependentSymmetricAndBounded) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + rng() % 8;
    std::vector<Pattern> ps;
    for (std::size_t c = 0; c < k; ++c) ps.push_back(fixtures::random_pattern(rng, 7, 5));
    const auto w = amn::store_patterns(ps);
    std::shuffle(ps.begin(), ps.end(), rng);
    ASSERT_EQ(amn::store_patterns(ps), w);

    std::vector<oracle::Vec> vs;
    for (const auto& p : ps) vs.push_back(fixtures::to_vec(p));
    ASSERT_EQ(to_mat(w), oracle::sum_outer(vs));
    for (std::size_t i = 0; i < w.dim(); ++i) {
      ASSERT_EQ(w(i, i), static_cast<int>(k));
      for (std::size_t j = 0; j < w.dim(); ++j) {
        ASSERT_EQ(w(i, j), w(j, i));
        ASSERT_LE(std::abs(w(i, j)), static_cast<int>(k));
      }
    }
    const auto key = fixtures::random_pattern(rng, 7, 5);
    for (auto a : amn::net_input(w, key)) {
      ASSERT_LE(std::llabs(a), static_cast<long long>(k * key.size()));
    }
  }
}

TEST(NetInput, StoredPatternChain) {
  const std::vector<Pattern> ps{fixtures::from_vec(kA), fixtures::from_vec(kB)};
  const auto w = amn::store_patterns(ps);
  const auto a = amn::net_input(w, fixtures::from_vec(kA));
  EXPECT_EQ(to_ll(a), oracle::matvec(oracle::sum_outer({kA, kB}), kA));
  EXPECT_EQ(to_ll(a), (std::vector<long long>{4, -4, 4, -4}));
}

TEST(NetInput, ZeroWeightsGiveZeroActivation) {
  std::mt19937_64 rng(3);
  const auto key = fixtures::random_pattern(rng, 6, 6);
  for (auto v : amn::net_input(amn::zero_weights(36), key)) EXPECT_EQ(v, 0);
}

TEST(NetInput, MatchesOracleAndIsOddInKey) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 4u, 17u, 64u}) {
    const auto w = random_weights(rng, n);
    const auto x = fixtures::random_pattern(rng, n, 1);
    const auto a = amn::net_input(w, x);
    ASSERT_EQ(to_ll(a), oracle::matvec(to_mat(w), fixtures::to_vec(x)));
    const auto neg = amn::net_input(w, x.negated());
    for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(neg[j], -a[j]);
  }
}

TEST(NetInput, RejectsDimensionMismatch) {
  EXPECT_THROW(amn::net_input(amn::zero_weights(3), Pattern::row({1, 1})), amn::Error);
}

TEST(Threshold, StrictSign) {
  EXPECT_EQ(amn::threshold(amn::ActivationVector{4, -4, 4, -4}), Pattern::row({1, -1, 1, -1}));
  EXPECT_EQ(amn::threshold(amn::ActivationVector{0, 0, 0}), Pattern::row({-1, -1, -1}));
  EXPECT_EQ(amn::threshold(amn::ActivationVector{1, 0, -1}), Pattern::row({1, -1, -1}));
}

TEST(Recall, OrthogonalStoredPatternIsExact) {
  const std::vector<Pattern> ps{fixtures::from_vec(kA), fixtures::from_vec(kB)};
  const auto w = amn::store_patterns(ps);
  EXPECT_EQ(amn::recall(w, ps[0]), ps[0]);
  EXPECT_EQ(amn::recall(w, ps[1]), ps[1]);
}

TEST(Recall, FlippedKeyHitsZeroActivation) {
  const oracle::Vec key{1, -1, 1, 1};
  const auto w = amn::store_patterns(std::vector<Pattern>{fixtures::from_vec(kA),
                                                          fixtures::from_vec(kB)});
  const auto expected = oracle::sign_strict(oracle::matvec(oracle::sum_outer({kA, kB}), key));
  const auto y = amn::recall(w, fixtures::from_vec(key));
  EXPECT_EQ(fixtures::to_vec(y), expected);
  EXPECT_EQ(y, Pattern::row({-1, -1, 1, -1}));
  EXPECT_EQ(to_ll(amn::net_input(w, fixtures::from_vec(key))),
            (std::vector<long long>{0, -4, 4, 0}));
}

TEST(Recall, KeepsKeyShape) {
  std::mt19937_64 rng(5);
  const auto x = fixtures::random_pattern(rng, 31, 39);
  const auto y = amn::recall(amn::store_patterns(std::vector<Pattern>{x}), x);
  EXPECT_EQ(y.width(), 31u);
  EXPECT_EQ(y.height(), 39u);
  EXPECT_EQ(y, x);
}

TEST(Recall, SinglePatternPerfectRecall) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {4u, 16u, 1209u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = fixtures::random_pattern(rng, n, 1);
      ASSERT_EQ(amn::recall(amn::store_patterns(std::vector<Pattern>{x}), x), x);
    }
  }
}

TEST(MatchScore, Examples) {
  std::mt19937_64 rng(7);
  const auto x = fixtures::random_pattern(rng, 8, 8);
  EXPECT_EQ(amn::match_score(x, x).str(), "100.00");
  EXPECT_EQ(amn::match_score(x, x.negated()).str(), "0.00");
  const auto s = amn::match_score(Pattern::row({-1, -1, 1, -1}), fixtures::from_vec(kA));
  EXPECT_EQ(s.agreements, 3u);
  EXPECT_EQ(s.str(), "75.00");
  EXPECT_DOUBLE_EQ(s.percent(), 75.0);
}

TEST(MatchScore, RoundsHalfUpFromExactRational) {
  EXPECT_EQ((amn::MatchScore{1, 3}).str(), "33.33");
  EXPECT_EQ((amn::MatchScore{2, 3}).str(), "66.67");
  EXPECT_EQ((amn::MatchScore{1, 8}).str(), "12.50");
  EXPECT_EQ((amn::MatchScore{1, 1600}).str(), "0.06");  // 0.0625
  EXPECT_EQ((amn::MatchScore{805, 1209}).str(), "66.58");
  EXPECT_EQ((amn::MatchScore{5, 10}), (amn::MatchScore{1, 2}));
  EXPECT_LT((amn::MatchScore{1, 3}), (amn::MatchScore{1, 2}));
}

TEST(MatchScore, SymmetricAndComplementary) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    const auto a = fixtures::random_pattern(rng, n, 1);
    const auto b = fixtures::random_pattern(rng, n, 1);
    const auto ab = amn::match_score(a, b);
    ASSERT_EQ(ab, amn::match_score(b, a));
    ASSERT_EQ(ab.agreements + amn::match_score(a, b.negated()).agreements, n);
  }
}

TEST(MatchScore, RejectsDimensionMismatch) {
  EXPECT_THROW(amn::match_score(Pattern::row({1}), Pattern::row({1, 1})), amn::Error);
}
