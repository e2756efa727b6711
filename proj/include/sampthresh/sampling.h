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

#ifndef SAMPTHRESH_SAMPLING_H_
#define SAMPTHRESH_SAMPLING_H_

// Client selection. Poisson (independent Bernoulli) sampling is what the
// privacy analysis assumes; the fixed-size cohort sampler emulates it while
// contacting only s = m + ceil(c sqrt(m)) clients.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/random.h"

namespace sampthresh {

// Indices in [0, n) of clients that pass an independent Bernoulli(p) test,
// in increasing order. Uses geometric gaps, so the cost is O(p n).
inline std::vector<std::size_t> SampleClientIndices(std::size_t n, double p,
                                                    std::uint64_t seed) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw DomainError("sampling probability must lie in [0, 1)");
  }
  std::vector<std::size_t> out;
  if (p == 0.0 || n == 0) return out;
  out.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * 1.1) + 16);
  Rng rng = MakeRng(seed);
  std::geometric_distribution<std::uint64_t> gap(p);
  std::uint64_t i = gap(rng);
  while (i < n) {
    out.push_back(static_cast<std::size_t>(i));
    i += 1 + gap(rng);
  }
  return out;
}

// Each client's item is included independently with probability p_s.
inline Sample SampleBernoulli(const Dataset& dataset, double p_s,
                              std::uint64_t seed) {
  Sample out;
  for (std::size_t i : SampleClientIndices(dataset.size(), p_s, seed)) {
    out.push_back(dataset[i]);
  }
  return out;
}

struct CohortConfig {
  std::uint64_t n = 0;
  std::uint64_t m = 1;
  double c = 10.0;

  // Number of clients contacted.
  std::uint64_t s() const {
    return m + static_cast<std::uint64_t>(
                   std::ceil(c * std::sqrt(static_cast<double>(m))));
  }

  void Validate() const {
    if (m < 1) throw InvalidInputError("CohortConfig: m must be >= 1");
    if (!(c >= 0.0)) throw InvalidInputError("CohortConfig: c must be >= 0");
    if (s() > n) {
      throw InvalidInputError(
          "CohortConfig: cohort size s = m + ceil(c sqrt(m)) exceeds n");
    }
  }
};

// Placeholder vote for an abstaining client: B + client_id. Injective in the
// client id and disjoint from [0, B) by construction, so every sentinel has
// count exactly 1.
inline BucketId SentinelBucket(std::uint64_t num_buckets,
                               std::uint64_t client_id) {
  return num_buckets + client_id;
}

inline bool IsSentinel(std::uint64_t num_buckets, BucketId bucket) {
  return bucket >= num_buckets;
}

// Contacts s distinct clients chosen uniformly; each participates with
// probability m/s and otherwise votes its sentinel. The marginal inclusion
// probability of any client is m/n.
inline Sample CohortSample(const Dataset& dataset, const CohortConfig& cfg,
                           std::uint64_t seed) {
  cfg.Validate();
  if (cfg.n != dataset.size()) {
    throw InvalidInputError("CohortSample: cfg.n differs from dataset size");
  }
  const std::uint64_t s = cfg.s();
  Rng rng = MakeRng(seed);

  // Floyd's algorithm: s distinct indices out of n without O(n) memory.
  std::vector<std::uint64_t> chosen;
  chosen.reserve(s);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(s);
  for (std::uint64_t j = cfg.n - s; j < cfg.n; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    std::uint64_t t = pick(rng);
    if (!seen.insert(t).second) {
      t = j;
      seen.insert(t);
    }
    chosen.push_back(t);
  }

  const double participate =
      static_cast<double>(cfg.m) / static_cast<double>(s);
  std::bernoulli_distribution coin(participate);
  Sample out;
  out.reserve(s);
  for (std::uint64_t client : chosen) {
    if (coin(rng)) {
      out.push_back(dataset[client]);
    } else {
      out.push_back(SentinelBucket(dataset.num_buckets(), client));
    }
  }
  return out;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_SAMPLING_H_
