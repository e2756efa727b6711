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

#ifndef SAMPTHRESH_QUANTILES_H_
#define SAMPTHRESH_QUANTILES_H_

// Quantiles of values in [0, 1], two ways: an interactive binary search that
// spends one 2-bucket histogram per step, and range/quantile queries over a
// TrieHH++ trie built on beta-ary value prefixes (a hierarchical histogram).

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sampthresh/calibration.h"
#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/mechanism.h"
#include "sampthresh/random.h"
#include "sampthresh/sampling.h"
#include "sampthresh/trie_hh.h"

namespace sampthresh {

// beta^levels as an exact integer; limited to 2^53 so that cell boundaries
// are exact in double arithmetic.
inline std::uint64_t GridSize(int beta, int levels) {
  if (beta < 2) throw DomainError("beta must be >= 2");
  if (levels < 0) throw DomainError("L must be >= 0");
  std::uint64_t g = 1;
  for (int i = 0; i < levels; ++i) {
    if (g > (std::uint64_t{1} << 53) / static_cast<std::uint64_t>(beta)) {
      throw DomainError("beta^L exceeds 2^53");
    }
    g *= static_cast<std::uint64_t>(beta);
  }
  return g;
}

// Index of the level-`levels` cell containing x; x = 1 goes to the last cell.
inline std::uint64_t CellOf(double x, int beta, int levels) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("value must lie in [0, 1]");
  const std::uint64_t grid = GridSize(beta, levels);
  const auto cell =
      static_cast<std::uint64_t>(std::floor(x * static_cast<double>(grid)));
  return cell >= grid ? grid - 1 : cell;
}

// Digit i (1-based) is floor(x beta^i) mod beta.
inline Prefix ValueToPrefix(double x, int beta, int levels) {
  std::uint64_t cell = CellOf(x, beta, levels);
  Prefix out(static_cast<std::size_t>(levels), '\0');
  for (int i = levels - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] =
        static_cast<char>(cell % static_cast<std::uint64_t>(beta));
    cell /= static_cast<std::uint64_t>(beta);
  }
  return out;
}

inline TrieDataset ValuesToTrieDataset(std::span<const double> values,
                                       int beta, int levels) {
  std::vector<Prefix> items;
  items.reserve(values.size());
  for (double v : values) items.push_back(ValueToPrefix(v, beta, levels));
  return TrieDataset(std::move(items), beta, levels);
}

// The half-open interval [cell beta^-level, (cell + 1) beta^-level).
// Level 0 is the whole domain.
struct RangeChunk {
  int level = 0;
  std::uint64_t cell = 0;
  int beta = 2;

  double lo() const {
    return static_cast<double>(cell) /
           static_cast<double>(GridSize(beta, level));
  }
  double hi() const {
    return static_cast<double>(cell + 1) /
           static_cast<double>(GridSize(beta, level));
  }

  friend bool operator==(const RangeChunk&, const RangeChunk&) = default;
};

// Greedy coarsest-first cover of [0, floor(r beta^L) / beta^L): at level l it
// takes the d_l cells before digit d_l of the truncated endpoint, so at most
// beta - 1 chunks per level. r = 1 is the single level-0 chunk.
inline std::vector<RangeChunk> DecomposeRange(double r, int beta, int levels) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r must lie in [0, 1]");
  const std::uint64_t grid = GridSize(beta, levels);
  const auto b = static_cast<std::uint64_t>(beta);
  auto end = static_cast<std::uint64_t>(std::floor(r * static_cast<double>(grid)));
  std::vector<RangeChunk> chunks;
  if (end >= grid) {
    chunks.push_back(RangeChunk{0, 0, beta});
    return chunks;
  }
  std::uint64_t divisor = grid;
  for (int level = 1; level <= levels; ++level) {
    divisor /= b;
    const std::uint64_t prefix = end / divisor;  // endpoint's level-l cell
    for (std::uint64_t c = prefix - prefix % b; c < prefix; ++c) {
      chunks.push_back(RangeChunk{level, c, beta});
    }
  }
  return chunks;
}

// Prefix string of a chunk (its digits in base beta).
inline Prefix ChunkPrefix(const RangeChunk& chunk) {
  Prefix out(static_cast<std::size_t>(chunk.level), '\0');
  std::uint64_t cell = chunk.cell;
  for (int i = chunk.level - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] =
        static_cast<char>(cell % static_cast<std::uint64_t>(chunk.beta));
    cell /= static_cast<std::uint64_t>(chunk.beta);
  }
  return out;
}

struct QuantileResult {
  double value = 0.0;
  // Scale of the rank error: 1/sqrt(m) for binary search, the worst-case
  // pruning loss L (beta - 1) tau / m for the trie.
  double rank_error_bound = 0.0;
  // Value resolution: 2^-h or beta^-L.
  double resolution = 0.0;
  double epsilon_spent = 0.0;
  double delta_spent = 0.0;
  // False when phi is so close to 0 or 1 that thresholding dominates.
  bool phi_in_range = true;
};

// Estimated fraction of clients with value below r, from the trie's chunk
// counts. Nodes pruned from the trie contribute 0. Chunks come from
// independent samples, so the sum is monotone in r only up to sampling noise.
inline double HierarchicalRangeQuery(const WeightedTrie& trie, double r) {
  double mass = 0.0;
  for (const RangeChunk& chunk :
       DecomposeRange(r, trie.branching(), trie.levels())) {
    if (chunk.level == 0) return 1.0;
    mass += static_cast<double>(trie.CountOf(ChunkPrefix(chunk)));
  }
  return mass / trie.scale();
}

// Smallest grid point r = j beta^-L whose estimated mass is >= phi, by
// bisection over j.
inline QuantileResult HierarchicalQuantile(const WeightedTrie& trie,
                                           double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw DomainError("phi must lie in [0, 1]");
  const std::uint64_t grid = GridSize(trie.branching(), trie.levels());
  const auto at = [&](std::uint64_t j) {
    return HierarchicalRangeQuery(
        trie, static_cast<double>(j) / static_cast<double>(grid));
  };
  std::uint64_t lo = 0;
  std::uint64_t hi = grid;  // at(grid) == 1 >= phi
  if (at(0) >= phi) hi = 0;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (at(mid) >= phi) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  QuantileResult out;
  out.value = static_cast<double>(hi) / static_cast<double>(grid);
  out.resolution = 1.0 / static_cast<double>(grid);
  out.rank_error_bound = static_cast<double>(trie.levels()) *
                         static_cast<double>(trie.branching() - 1) *
                         static_cast<double>(trie.tau()) / trie.scale();
  out.epsilon_spent = trie.budget().basic_epsilon;
  out.delta_spent = trie.budget().basic_delta;
  const double edge = static_cast<double>(trie.tau()) / trie.scale();
  out.phi_in_range = phi > edge && phi < 1.0 - edge;
  return out;
}

// Binary search for the phi-quantile with h fresh 2-bucket histograms
// [0, t) and [t, 1]. A suppressed bucket counts as mass 0.
inline QuantileResult BinarySearchQuantile(std::span<const double> values,
                                           double phi, int h,
                                           const PrivacyParams& params,
                                           std::uint64_t seed) {
  params.Validate();
  if (h < 1) throw DomainError("BinarySearchQuantile: h must be >= 1");
  if (!(phi > 0.0 && phi < 1.0)) throw DomainError("phi must lie in (0, 1)");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("values must lie in [0, 1]");
  }
  const double m = params.p_s * static_cast<double>(values.size());
  double t = 0.5;
  Sample votes;
  for (int round = 1; round <= h; ++round) {
    votes.clear();
    for (std::size_t i : SampleClientIndices(
             values.size(), params.p_s,
             DeriveSeed(seed, static_cast<std::uint64_t>(round)))) {
      votes.push_back(values[i] < t ? 0 : 1);
    }
    const Histogram released = ThresholdHistogram(votes, params.tau, 2);
    const double below = m > 0.0 ? static_cast<double>(released.count(0)) / m : 0.0;
    const double step = std::ldexp(1.0, -(round + 1));
    t += below < phi ? step : -step;
  }
  QuantileResult out;
  out.value = t;
  out.resolution = std::ldexp(1.0, -h);
  out.rank_error_bound = m > 0.0 ? 1.0 / std::sqrt(m) : 1.0;
  out.epsilon_spent = h * params.epsilon;
  out.delta_spent = h * params.delta;
  const double edge = m > 0.0 ? static_cast<double>(params.tau) / m : 1.0;
  out.phi_in_range = phi > edge && phi < 1.0 - edge;
  return out;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_QUANTILES_H_
