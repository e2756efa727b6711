// Copyright 2026 The sampthresh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sampthresh/trie_hh.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sampthresh/calibration.h"
#include "sampthresh/errors.h"

namespace sampthresh {
namespace {

TEST(TrieDatasetTest, PadsShortStringsWithEndSymbol) {
  const std::vector<std::string> words{"ab", "abc", "b"};
  const TrieDataset d = TrieDataset::FromStrings(words, "abc", 3);
  EXPECT_EQ(d.branching(), 3);
  EXPECT_EQ(d.Render(d.items()[0]), "ab$");
  EXPECT_EQ(d.Render(d.items()[1]), "abc");
  EXPECT_EQ(d.Render(d.items()[2]), "b$$");
}

TEST(TrieDatasetTest, TruncatesLongStrings) {
  const std::vector<std::string> words{"abcabc"};
  EXPECT_EQ(TrieDataset::FromStrings(words, "abc", 2).Render(
                TrieDataset::FromStrings(words, "abc", 2).items()[0]),
            "ab");
}

TEST(TrieDatasetTest, RejectsCharactersOutsideAlphabet) {
  const std::vector<std::string> words{"abz"};
  EXPECT_THROW(TrieDataset::FromStrings(words, "abc", 3), InvalidInputError);
  EXPECT_THROW(TrieDataset::FromStrings(words, "aa", 3), InvalidInputError);
}

TEST(TrieDatasetTest, ToDatasetIsDenseDictionary) {
  const std::vector<std::string> words{"b", "a", "b"};
  const auto enc = TrieDataset::FromStrings(words, "ab", 1).ToDataset();
  ASSERT_EQ(enc.dictionary.size(), 2u);
  EXPECT_EQ(enc.dataset.num_buckets(), 2u);
  EXPECT_EQ(enc.dataset[0], 1u);
  EXPECT_EQ(enc.dataset[1], 0u);
  EXPECT_EQ(enc.dataset[2], 1u);
}

TEST(ComposeTest, BasicAndAdvanced) {
  const CompositionBudget b = Compose(0.1, 1e-9, 10);
  EXPECT_EQ(b.basic_epsilon, 1.0);
  EXPECT_EQ(b.basic_delta, 1e-8);
  ASSERT_TRUE(b.advanced_epsilon.has_value());
  EXPECT_NEAR(*b.advanced_epsilon / 1.457228084883022, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(*b.advanced_delta, 2e-8);
}

TEST(ComposeTest, AdvancedOnlyBelowOne) {
  EXPECT_FALSE(Compose(1.0, 1e-9, 10).advanced_epsilon.has_value());
  EXPECT_TRUE(Compose(0.99, 1e-9, 10).advanced_epsilon.has_value());
}

TEST(ComposeTest, SingleLevelBasicIsIdentity) {
  const CompositionBudget b = Compose(0.3, 1e-6, 1);
  EXPECT_EQ(b.basic_epsilon, 0.3);
  EXPECT_EQ(b.basic_delta, 1e-6);
}

TEST(ComposeTest, RejectsDeltaTimesLevelsAtLeastOne) {
  EXPECT_THROW(Compose(0.1, 0.2, 5), DomainError);
  EXPECT_THROW(Compose(0.1, 0.0, 5), DomainError);
}

TEST(LevelSeedTest, LevelsGetDistinctSeeds) {
  std::vector<std::uint64_t> seeds;
  for (int l = 1; l <= 64; ++l) seeds.push_back(LevelSeed(5, l));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::unique(seeds.begin(), seeds.end()), seeds.end());
}

// n clients: `heavy` of them hold "aab", the rest spread over 8 strings.
TrieDataset SkewedDataset(std::size_t n, std::size_t heavy) {
  const std::vector<std::string> others{"abb", "bab", "bba", "bbb",
                                        "aba", "baa", "ab",  "b"};
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    words.push_back(i < heavy ? "aab" : others[i % others.size()]);
  }
  return TrieDataset::FromStrings(words, "ab", 3);
}

TEST(RunTrieHHTest, HeavyStringSurvivesAllLevels) {
  const TrieDataset d = SkewedDataset(100000, 10000);
  TrieConfig cfg;
  cfg.levels = 3;
  cfg.branching = 2;
  cfg.params = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  int survived = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const WeightedTrie trie = RunTrieHH(d, cfg, seed);
    survived += trie.Contains(std::string("\0\0\1", 3)) ? 1 : 0;
  }
  EXPECT_GE(survived, 99);
}

TEST(RunTrieHHTest, RestrictedTrieIsPrefixClosed) {
  const TrieDataset d = SkewedDataset(20000, 3000);
  TrieConfig cfg{3, 2, Calibrate(1.0, 1e-6, 1.0 / 6.0), TrieMode::kRestricted};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedTrie trie = RunTrieHH(d, cfg, seed);
    for (int l = 1; l <= trie.levels(); ++l) {
      for (const auto& [prefix, count] : trie.level(l)) {
        EXPECT_GE(count, cfg.params.tau);
        EXPECT_TRUE(trie.Contains(prefix.substr(0, prefix.size() - 1)));
      }
    }
  }
}

TEST(RunTrieHHTest, BudgetIsLevelsTimesPerLevel) {
  const TrieDataset d = SkewedDataset(1000, 100);
  TrieConfig cfg{3, 2, Calibrate(0.5, 1e-8, 1.0 / 6.0), TrieMode::kRestricted};
  const WeightedTrie trie = RunTrieHH(d, cfg, 1);
  EXPECT_DOUBLE_EQ(trie.budget().basic_epsilon, 1.5);
  EXPECT_DOUBLE_EQ(trie.budget().basic_delta, 3e-8);
}

TEST(RunTrieHHTest, DeterministicPerSeed) {
  const TrieDataset d = SkewedDataset(30000, 5000);
  TrieConfig cfg{3, 2, Calibrate(1.0, 1e-8, 1.0 / 6.0), TrieMode::kRestricted};
  const WeightedTrie a = RunTrieHH(d, cfg, 77);
  const WeightedTrie b = RunTrieHH(d, cfg, 77);
  for (int l = 1; l <= 3; ++l) EXPECT_EQ(a.level(l), b.level(l));
}

TEST(RunTrieHHTest, UnrestrictedSharesFirstLevel) {
  const TrieDataset d = SkewedDataset(30000, 5000);
  TrieConfig cfg{3, 2, Calibrate(1.0, 1e-8, 1.0 / 6.0), TrieMode::kRestricted};
  const WeightedTrie restricted = RunTrieHH(d, cfg, 3);
  cfg.mode = TrieMode::kUnrestricted;
  const WeightedTrie unrestricted = RunTrieHH(d, cfg, 3);
  EXPECT_EQ(restricted.level(1), unrestricted.level(1));
  for (int l = 2; l <= 3; ++l) {
    for (const auto& [prefix, count] : restricted.level(l)) {
      EXPECT_GE(unrestricted.CountOf(prefix), count);
    }
  }
}

TEST(RunTrieHHTest, RejectsShapeMismatch) {
  const TrieDataset d = SkewedDataset(100, 10);
  TrieConfig cfg{4, 2, Calibrate(1.0, 1e-8, 1.0 / 6.0), TrieMode::kRestricted};
  EXPECT_THROW(RunTrieHH(d, cfg, 1), InvalidInputError);
  cfg.levels = 3;
  cfg.branching = 3;
  EXPECT_THROW(RunTrieHH(d, cfg, 1), InvalidInputError);
}

TEST(FlatHeavyHittersTest, SingleHistogramBudget) {
  const auto enc = SkewedDataset(50000, 10000).ToDataset();
  const PrivacyParams p = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  const FlatHeavyHitterResult r = FlatHeavyHitters(enc.dataset, p, 4);
  EXPECT_EQ(r.epsilon, 1.0);
  EXPECT_EQ(r.delta, 1e-8);
  const auto heavy = static_cast<BucketId>(
      std::find(enc.dictionary.begin(), enc.dictionary.end(),
                std::string("\0\0\1", 3)) -
      enc.dictionary.begin());
  EXPECT_TRUE(r.histogram.contains(heavy));
}

}  // namespace
}  // namespace sampthresh
