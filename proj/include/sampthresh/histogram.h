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

#ifndef SAMPTHRESH_HISTOGRAM_H_
#define SAMPTHRESH_HISTOGRAM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sampthresh/errors.h"

namespace sampthresh {

using BucketId = std::uint64_t;
using Count = std::int64_t;

// The multiset of votes a sampler hands to the aggregator. May contain
// sentinel ids >= B (see sampling.h); those never survive a threshold >= 2.
using Sample = std::vector<BucketId>;

// n client items, each a bucket id in [0, B).
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::vector<BucketId> items, std::uint64_t num_buckets,
          std::string provenance = {})
      : items_(std::move(items)),
        num_buckets_(num_buckets),
        provenance_(std::move(provenance)) {
    if (num_buckets_ == 0 && !items_.empty()) {
      throw InvalidInputError("Dataset: B must be positive");
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (items_[i] >= num_buckets_) {
        std::ostringstream msg;
        msg << "Dataset: item " << i << " has bucket " << items_[i]
            << " >= B = " << num_buckets_;
        throw InvalidInputError(msg.str());
      }
    }
  }

  std::span<const BucketId> items() const { return items_; }
  BucketId operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::uint64_t num_buckets() const { return num_buckets_; }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<BucketId> items_;
  std::uint64_t num_buckets_ = 0;
  std::string provenance_;
};

// Sparse bucket -> count map. Zero counts are never stored. Iteration is in
// increasing bucket order, which doubles as the canonical form used when
// comparing output distributions.
class Histogram {
 public:
  using Map = std::map<BucketId, Count>;

  Histogram() = default;
  explicit Histogram(std::uint64_t num_buckets) : num_buckets_(num_buckets) {}

  // Tallies a sample without thresholding.
  static Histogram FromSample(std::span<const BucketId> sample,
                              std::uint64_t num_buckets) {
    Histogram h(num_buckets);
    for (BucketId b : sample) h.Add(b, 1);
    return h;
  }

  void Add(BucketId bucket, Count count) {
    if (bucket >= num_buckets_) {
      std::ostringstream msg;
      msg << "Histogram: bucket " << bucket << " >= B = " << num_buckets_;
      throw InvalidInputError(msg.str());
    }
    if (count < 0) throw InvalidInputError("Histogram: negative count");
    if (count == 0) return;
    if (tau_applied_ && counts_[bucket] + count < *tau_applied_) {
      throw InvalidInputError("Histogram: count below applied threshold");
    }
    counts_[bucket] += count;
  }

  Count count(BucketId bucket) const {
    auto it = counts_.find(bucket);
    return it == counts_.end() ? 0 : it->second;
  }
  bool contains(BucketId bucket) const { return counts_.contains(bucket); }

  Count Total() const {
    Count total = 0;
    for (const auto& [b, c] : counts_) total += c;
    return total;
  }

  std::uint64_t num_buckets() const { return num_buckets_; }
  const Map& counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  Map::const_iterator begin() const { return counts_.begin(); }
  Map::const_iterator end() const { return counts_.end(); }

  bool thresholded() const { return tau_applied_.has_value(); }
  std::optional<Count> tau_applied() const { return tau_applied_; }

  // Drops every count below tau and marks the histogram as thresholded.
  // Counts equal to tau are kept.
  Histogram Thresholded(Count tau) const {
    if (tau < 1) throw InvalidInputError("threshold tau must be >= 1");
    Histogram out(num_buckets_);
    for (const auto& [b, c] : counts_) {
      if (c >= tau) out.counts_.emplace_hint(out.counts_.end(), b, c);
    }
    out.tau_applied_ = tau;
    return out;
  }

  friend bool operator==(const Histogram& a, const Histogram& b) {
    return a.num_buckets_ == b.num_buckets_ && a.counts_ == b.counts_ &&
           a.tau_applied_ == b.tau_applied_;
  }

 private:
  std::uint64_t num_buckets_ = 0;
  Map counts_;
  std::optional<Count> tau_applied_;
};

// Estimated relative frequencies, scaled against a population of n through
// `scale` (the expected sample size p_s n for sampled mechanisms). Absent
// buckets estimate 0. Baseline mechanisms may store negative debiased
// values; the sample-and-threshold estimator never does.
struct FrequencyEstimate {
  std::uint64_t num_buckets = 0;
  double scale = 1.0;
  std::map<BucketId, double> values;

  double at(BucketId b) const {
    auto it = values.find(b);
    return it == values.end() ? 0.0 : it->second;
  }
};

// Exact counts of the whole population.
inline Histogram TrueHistogram(const Dataset& dataset) {
  return Histogram::FromSample(dataset.items(), dataset.num_buckets());
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_HISTOGRAM_H_
