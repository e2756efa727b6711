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

#ifndef SAMPTHRESH_TRIE_HH_H_
#define SAMPTHRESH_TRIE_HH_H_

// TrieHH++: heavy hitters by building a prefix trie one level per round.
// Each round is one sample-and-threshold histogram over prefixes, with a
// fresh sample, and surviving prefixes keep their sampled counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sampthresh/calibration.h"
#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/mechanism.h"
#include "sampthresh/random.h"
#include "sampthresh/sampling.h"

namespace sampthresh {

// A prefix is a byte string of symbol indices. Symbols 0..beta-1 are the
// alphabet; symbol beta terminates items shorter than L.
using Prefix = std::string;

// Client items as fixed-length symbol strings over a beta-ary alphabet.
class TrieDataset {
 public:
  TrieDataset(std::vector<Prefix> items, int branching, int levels,
              std::string alphabet = {})
      : items_(std::move(items)),
        branching_(branching),
        levels_(levels),
        alphabet_(std::move(alphabet)) {
    if (branching_ < 2 || branching_ > 255) {
      throw InvalidInputError("TrieDataset: branching must lie in [2, 255]");
    }
    if (levels_ < 1) throw InvalidInputError("TrieDataset: L must be >= 1");
    for (const Prefix& item : items_) {
      if (item.size() != static_cast<std::size_t>(levels_)) {
        throw InvalidInputError("TrieDataset: item length differs from L");
      }
      for (char c : item) {
        if (static_cast<unsigned char>(c) > branching_) {
          throw InvalidInputError("TrieDataset: symbol outside alphabet");
        }
      }
    }
  }

  // Maps each character through `alphabet`, truncates to `levels` symbols
  // and pads short strings with the end symbol.
  static TrieDataset FromStrings(std::span<const std::string> strings,
                                 std::string_view alphabet, int levels) {
    if (alphabet.size() < 2 || alphabet.size() > 255) {
      throw InvalidInputError("alphabet must have 2..255 characters");
    }
    std::array<int, 256> index;
    index.fill(-1);
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      auto c = static_cast<unsigned char>(alphabet[i]);
      if (index[c] != -1) throw InvalidInputError("alphabet repeats a symbol");
      index[c] = static_cast<int>(i);
    }
    const auto end = static_cast<char>(alphabet.size());
    std::vector<Prefix> items;
    items.reserve(strings.size());
    for (const std::string& s : strings) {
      Prefix p(static_cast<std::size_t>(levels), end);
      const std::size_t len = std::min(s.size(), p.size());
      for (std::size_t i = 0; i < len; ++i) {
        const int sym = index[static_cast<unsigned char>(s[i])];
        if (sym < 0) {
          throw InvalidInputError("string '" + s +
                                  "' has a character outside the alphabet");
        }
        p[i] = static_cast<char>(sym);
      }
      items.push_back(std::move(p));
    }
    return TrieDataset(std::move(items), static_cast<int>(alphabet.size()),
                       levels, std::string(alphabet));
  }

  std::span<const Prefix> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  int branching() const { return branching_; }
  int levels() const { return levels_; }
  char end_symbol() const { return static_cast<char>(branching_); }

  // Human-readable form: alphabet characters when known, digits otherwise;
  // the end symbol prints as '$'.
  std::string Render(std::string_view prefix) const {
    std::string out;
    for (char c : prefix) {
      const auto sym = static_cast<unsigned char>(c);
      if (sym == branching_) {
        out.push_back('$');
      } else if (!alphabet_.empty()) {
        out.push_back(alphabet_[sym]);
      } else if (branching_ <= 36) {
        out.push_back("0123456789abcdefghijklmnopqrstuvwxyz"[sym]);
      } else {
        if (!out.empty()) out.push_back('.');
        out += std::to_string(sym);
      }
    }
    return out;
  }

  // Whole items as bucket ids (dense, in sorted item order) for the flat
  // heavy-hitter variant. `dictionary[id]` is the item.
  struct Encoded {
    Dataset dataset;
    std::vector<Prefix> dictionary;
  };
  Encoded ToDataset() const {
    std::vector<Prefix> dict(items_.begin(), items_.end());
    std::sort(dict.begin(), dict.end());
    dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
    std::vector<BucketId> ids;
    ids.reserve(items_.size());
    for (const Prefix& item : items_) {
      ids.push_back(static_cast<BucketId>(
          std::lower_bound(dict.begin(), dict.end(), item) - dict.begin()));
    }
    const auto b = static_cast<std::uint64_t>(std::max<std::size_t>(dict.size(), 1));
    return Encoded{Dataset(std::move(ids), b, "trie items"), std::move(dict)};
  }

 private:
  std::vector<Prefix> items_;
  int branching_;
  int levels_;
  std::string alphabet_;
};

// Privacy of L rounds at (eps', delta') each.
struct CompositionBudget {
  double per_level_epsilon = 0.0;
  double per_level_delta = 0.0;
  std::int64_t levels = 1;
  double basic_epsilon = 0.0;
  double basic_delta = 0.0;
  // Advanced composition, only defined for eps' < 1.
  std::optional<double> advanced_epsilon;
  std::optional<double> advanced_delta;
};

// Basic (L eps', L delta') and advanced
// (L eps'^2 + eps' sqrt(L ln(1 / (delta' L))), 2 L delta') composition.
inline CompositionBudget Compose(double epsilon, double delta,
                                 std::int64_t levels) {
  if (!(epsilon > 0.0)) throw DomainError("Compose: epsilon must be > 0");
  if (levels < 1) throw DomainError("Compose: L must be >= 1");
  const auto l = static_cast<double>(levels);
  if (!(delta > 0.0) || !(delta * l < 1.0)) {
    throw DomainError("Compose: requires 0 < delta' L < 1");
  }
  CompositionBudget b;
  b.per_level_epsilon = epsilon;
  b.per_level_delta = delta;
  b.levels = levels;
  b.basic_epsilon = l * epsilon;
  b.basic_delta = l * delta;
  if (epsilon < 1.0) {
    b.advanced_epsilon = l * epsilon * epsilon +
                         epsilon * std::sqrt(l * std::log(1.0 / (delta * l)));
    b.advanced_delta = 2.0 * l * delta;
  }
  return b;
}

enum class TrieMode {
  // Only clients whose parent prefix survived may vote.
  kRestricted,
  // Every sampled client votes its prefix at every level.
  kUnrestricted,
};

struct TrieConfig {
  int levels = 1;
  int branching = 2;
  PrivacyParams params;
  TrieMode mode = TrieMode::kRestricted;

  void Validate() const {
    if (levels < 1) throw InvalidInputError("TrieConfig: L must be >= 1");
    if (branching < 2) throw InvalidInputError("TrieConfig: beta must be >= 2");
    params.Validate();
  }
};

// Surviving prefixes per level with their sampled counts. Level l (1-based)
// holds prefixes of length l; the root is the empty prefix.
class WeightedTrie {
 public:
  using Level = std::map<Prefix, Count>;

  WeightedTrie() = default;
  WeightedTrie(int levels, int branching, Count tau, double scale,
               TrieMode mode)
      : nodes_(static_cast<std::size_t>(levels)),
        branching_(branching),
        tau_(tau),
        scale_(scale),
        mode_(mode) {}

  int levels() const { return static_cast<int>(nodes_.size()); }
  int branching() const { return branching_; }
  Count tau() const { return tau_; }
  // Expected sample size p_s n of each round.
  double scale() const { return scale_; }
  TrieMode mode() const { return mode_; }

  const Level& level(int l) const { return nodes_.at(static_cast<std::size_t>(l - 1)); }
  Level& mutable_level(int l) { return nodes_.at(static_cast<std::size_t>(l - 1)); }

  bool Contains(std::string_view prefix) const {
    if (prefix.empty()) return true;
    if (prefix.size() > nodes_.size()) return false;
    return level(static_cast<int>(prefix.size())).contains(Prefix(prefix));
  }

  Count CountOf(std::string_view prefix) const {
    if (prefix.empty() || prefix.size() > nodes_.size()) return 0;
    const Level& lvl = level(static_cast<int>(prefix.size()));
    auto it = lvl.find(Prefix(prefix));
    return it == lvl.end() ? 0 : it->second;
  }

  std::size_t NodeCount() const {
    std::size_t total = 0;
    for (const Level& l : nodes_) total += l.size();
    return total;
  }

  // Deepest non-empty level.
  int Depth() const {
    for (int l = levels(); l >= 1; --l) {
      if (!level(l).empty()) return l;
    }
    return 0;
  }

  const CompositionBudget& budget() const { return budget_; }
  void set_budget(const CompositionBudget& b) { budget_ = b; }

 private:
  std::vector<Level> nodes_;
  int branching_ = 2;
  Count tau_ = 1;
  double scale_ = 1.0;
  TrieMode mode_ = TrieMode::kRestricted;
  CompositionBudget budget_;
};

// One round: fresh Bernoulli(p_s) sample, every sampled client votes its
// length-`level` prefix (in restricted mode only if the parent prefix is
// already in the trie), votes below tau are dropped.
inline void ExtendLevel(WeightedTrie& trie, const TrieDataset& dataset,
                        int level, const PrivacyParams& params,
                        std::uint64_t seed) {
  if (level < 1 || level > trie.levels() || level > dataset.levels()) {
    throw InvalidInputError("ExtendLevel: level out of range");
  }
  const bool gated = trie.mode() == TrieMode::kRestricted && level > 1;
  const auto len = static_cast<std::size_t>(level);
  const auto items = dataset.items();
  std::unordered_map<Prefix, Count> tally;
  const WeightedTrie::Level* parents = gated ? &trie.level(level - 1) : nullptr;
  for (std::size_t i : SampleClientIndices(items.size(), params.p_s, seed)) {
    std::string_view item = items[i];
    if (gated && !parents->contains(Prefix(item.substr(0, len - 1)))) continue;
    ++tally[Prefix(item.substr(0, len))];
  }
  WeightedTrie::Level& out = trie.mutable_level(level);
  out.clear();
  for (auto& [prefix, count] : tally) {
    if (count >= params.tau) out.emplace(prefix, count);
  }
}

// Seed of round `level` under `seed`.
inline std::uint64_t LevelSeed(std::uint64_t seed, int level) {
  return DeriveSeed(seed, static_cast<std::uint64_t>(level));
}

// Runs L rounds and attaches the (L eps, L delta) budget.
inline WeightedTrie RunTrieHH(const TrieDataset& dataset,
                              const TrieConfig& cfg, std::uint64_t seed) {
  cfg.Validate();
  if (cfg.levels > dataset.levels() || cfg.branching != dataset.branching()) {
    throw InvalidInputError("RunTrieHH: config does not match dataset shape");
  }
  WeightedTrie trie(cfg.levels, cfg.branching, cfg.params.tau,
                    cfg.params.p_s * static_cast<double>(dataset.size()),
                    cfg.mode);
  for (int level = 1; level <= cfg.levels; ++level) {
    ExtendLevel(trie, dataset, level, cfg.params, LevelSeed(seed, level));
  }
  trie.set_budget(Compose(cfg.params.epsilon, cfg.params.delta, cfg.levels));
  return trie;
}

struct FlatHeavyHitterResult {
  Histogram histogram;
  // A single histogram costs (epsilon, delta), not (L epsilon, L delta).
  double epsilon = 0.0;
  double delta = 0.0;
};

// One sample-and-threshold histogram over whole items.
inline FlatHeavyHitterResult FlatHeavyHitters(const Dataset& dataset,
                                              const PrivacyParams& params,
                                              std::uint64_t seed) {
  return FlatHeavyHitterResult{RunMechanism(dataset, params, seed),
                               params.epsilon, params.delta};
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_TRIE_HH_H_
