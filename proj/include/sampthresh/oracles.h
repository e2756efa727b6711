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

#ifndef SAMPTHRESH_ORACLES_H_
#define SAMPTHRESH_ORACLES_H_

// Brute-force and exact-combinatorics references used to certify the
// mechanism numerically: the full output law on tiny datasets, hockey-stick
// divergence, exact binomial probabilities and the S_k subset counts.
//
// Nothing in this header calls into the calibration bounds; tests compare
// the two independently.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"

namespace sampthresh {

using BigInt = boost::multiprecision::cpp_int;

// Sorted (bucket, count) pairs of a thresholded histogram.
using HistogramKey = std::vector<std::pair<BucketId, Count>>;

inline HistogramKey KeyOf(const Histogram& h) {
  return HistogramKey(h.begin(), h.end());
}

// Probability law of the mechanism's output: Pr[M(D) = H] for every H.
class OutputDistribution {
 public:
  void AddMass(const HistogramKey& key, double mass) { mass_[key] += mass; }

  double Probability(const HistogramKey& key) const {
    auto it = mass_.find(key);
    return it == mass_.end() ? 0.0 : it->second;
  }

  double TotalMass() const {
    double total = 0.0;
    for (const auto& [k, p] : mass_) total += p;
    return total;
  }

  const std::map<HistogramKey, double>& masses() const { return mass_; }
  std::size_t size() const { return mass_.size(); }

 private:
  std::map<HistogramKey, double> mass_;
};

inline constexpr std::size_t kMaxEnumerationSize = 20;

namespace internal {

inline HistogramKey ThresholdedKey(std::span<const BucketId> items,
                                   std::uint64_t mask, Count tau) {
  std::map<BucketId, Count> counts;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if ((mask >> i) & 1U) ++counts[items[i]];
  }
  HistogramKey key;
  for (const auto& [b, c] : counts) {
    if (c >= tau) key.emplace_back(b, c);
  }
  return key;
}

inline void CheckEnumerable(std::size_t n) {
  if (n > kMaxEnumerationSize) {
    std::ostringstream msg;
    msg << "exhaustive enumeration supports n <= " << kMaxEnumerationSize
        << ", got n = " << n;
    throw InvalidInputError(msg.str());
  }
}

}  // namespace internal

// Enumerates all 2^n inclusion patterns under Bernoulli(p_s) sampling and
// accumulates the probability of each thresholded histogram.
inline OutputDistribution ComputeOutputDistribution(
    std::span<const BucketId> items, double p_s, Count tau) {
  internal::CheckEnumerable(items.size());
  if (!(p_s >= 0.0 && p_s <= 1.0)) {
    throw DomainError("ComputeOutputDistribution: p_s must lie in [0, 1]");
  }
  const std::size_t n = items.size();
  // Weight depends only on |S|; precompute p^k (1-p)^(n-k).
  std::vector<double> weight(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    weight[k] = std::pow(p_s, static_cast<double>(k)) *
                std::pow(1.0 - p_s, static_cast<double>(n - k));
  }
  OutputDistribution dist;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    const double w = weight[static_cast<std::size_t>(std::popcount(mask))];
    if (w == 0.0) continue;
    dist.AddMass(internal::ThresholdedKey(items, mask, tau), w);
  }
  return dist;
}

// Same, under uniform fixed-size sampling of exactly m clients.
inline OutputDistribution ComputeFixedSizeOutputDistribution(
    std::span<const BucketId> items, std::size_t m, Count tau) {
  internal::CheckEnumerable(items.size());
  const std::size_t n = items.size();
  if (m > n) throw InvalidInputError("fixed sample size m exceeds n");
  double subsets = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  OutputDistribution dist;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
    dist.AddMass(internal::ThresholdedKey(items, mask, tau), 1.0 / subsets);
  }
  return dist;
}

// Smallest delta with P(E) <= e^eps Q(E) + delta for every event E:
// sum over outcomes of max(P(o) - e^eps Q(o), 0).
inline double HockeyStick(const OutputDistribution& p,
                          const OutputDistribution& q, double epsilon) {
  const double scale = std::exp(epsilon);
  double delta = 0.0;
  for (const auto& [key, mass] : p.masses()) {
    const double excess = mass - scale * q.Probability(key);
    if (excess > 0.0) delta += excess;
  }
  return delta;
}

inline double SymmetricHockeyStick(const OutputDistribution& p,
                                   const OutputDistribution& q,
                                   double epsilon) {
  return std::max(HockeyStick(p, q, epsilon), HockeyStick(q, p, epsilon));
}

// Number of positions at which two equal-length datasets differ, or
// SIZE_MAX when lengths differ.
inline std::size_t Hamming(std::span<const BucketId> a,
                           std::span<const BucketId> b) {
  if (a.size() != b.size()) return std::numeric_limits<std::size_t>::max();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

struct VerifyRow {
  double epsilon = 0.0;
  double observed_delta = 0.0;
  // Filled in by the caller from the calibration bound; NaN when the bound
  // does not apply (p_s > 1 - exp(-epsilon)).
  double bound_delta = std::numeric_limits<double>::quiet_NaN();
  bool bound_applicable = false;
  bool certified = false;
};

// Observed symmetric hockey-stick delta for each epsilon, for two datasets
// that differ in at most one client's value.
inline std::vector<VerifyRow> ObservedDeltas(std::span<const BucketId> d,
                                             std::span<const BucketId> d_prime,
                                             double p_s, Count tau,
                                             std::span<const double> epsilons) {
  if (Hamming(d, d_prime) > 1) {
    throw InvalidInputError(
        "datasets are not neighbors: they must have equal size and differ in "
        "at most one client");
  }
  const OutputDistribution p = ComputeOutputDistribution(d, p_s, tau);
  const OutputDistribution q = ComputeOutputDistribution(d_prime, p_s, tau);
  std::vector<VerifyRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    VerifyRow row;
    row.epsilon = eps;
    row.observed_delta = SymmetricHockeyStick(p, q, eps);
    rows.push_back(row);
  }
  return rows;
}

// log C(k, v) via lgamma.
inline double LogChoose(std::int64_t k, std::int64_t v) {
  return std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(v) + 1.0) -
         std::lgamma(static_cast<double>(k - v) + 1.0);
}

inline double LogBinomialPmf(std::int64_t k, double p, std::int64_t v) {
  if (k < 0 || v < 0 || v > k) {
    return -std::numeric_limits<double>::infinity();
  }
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial p must be in [0,1]");
  if (p == 0.0) {
    return v == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (p == 1.0) {
    return v == k ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return LogChoose(k, v) + static_cast<double>(v) * std::log(p) +
         static_cast<double>(k - v) * std::log1p(-p);
}

// Pr[B(k, p) = v].
inline double BinomialPmf(std::int64_t k, double p, std::int64_t v) {
  return std::exp(LogBinomialPmf(k, p, v));
}

// log Pr[B(k, p) >= t], by log-sum-exp over the upper tail.
inline double LogBinomialTailGe(std::int64_t k, double p, std::int64_t t) {
  if (t <= 0) return 0.0;
  if (t > k) return -std::numeric_limits<double>::infinity();
  double peak = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = t; j <= k; ++j) {
    peak = std::max(peak, LogBinomialPmf(k, p, j));
  }
  if (std::isinf(peak)) return peak;
  double sum = 0.0;
  for (std::int64_t j = t; j <= k; ++j) {
    sum += std::exp(LogBinomialPmf(k, p, j) - peak);
  }
  return peak + std::log(sum);
}

inline double BinomialTailGe(std::int64_t k, double p, std::int64_t t) {
  return std::exp(LogBinomialTailGe(k, p, t));
}

// (1 - p_s) k / (k - v): Pr[count = v | k copies] / Pr[count = v | k - 1].
inline double CountRatio(std::int64_t k, std::int64_t v, double p_s) {
  if (v < 0 || k <= v) {
    throw DomainError("CountRatio: requires k > v >= 0");
  }
  if (!(p_s >= 0.0 && p_s < 1.0)) {
    throw DomainError("CountRatio: p_s must lie in [0, 1)");
  }
  return (1.0 - p_s) * static_cast<double>(k) / static_cast<double>(k - v);
}

inline BigInt Choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// S_k(n, s, v): ways to pick s of n clients and get exactly v of the k
// holders of the target item, C(k, v) C(n - k, s - v).
inline BigInt SCountExact(std::int64_t k, std::int64_t n, std::int64_t s,
                          std::int64_t v) {
  if (k < 0 || k > n) throw DomainError("SCount: requires 0 <= k <= n");
  return Choose(k, v) * Choose(n - k, s - v);
}

// S_k(n, s, tau): ways to get at least tau holders, sum_{j >= tau}.
inline BigInt SCountAtLeast(std::int64_t k, std::int64_t n, std::int64_t s,
                            std::int64_t tau) {
  if (k < 0 || k > n) throw DomainError("SCount: requires 0 <= k <= n");
  BigInt total = 0;
  for (std::int64_t j = std::max<std::int64_t>(tau, 0); j <= std::min(k, s);
       ++j) {
    total += SCountExact(k, n, s, j);
  }
  return total;
}

// exp(-(w - tau)^2 / (2 w)) with w = W m / n: chance that an item with W
// copies is sampled fewer than tau times.
inline double OmitProbabilityBound(double count, double n, double m,
                                   double tau) {
  if (!(n > 0.0)) throw DomainError("OmitProbabilityBound: n must be > 0");
  const double w = count * m / n;
  if (!(w > tau)) {
    throw DomainError(
        "OmitProbabilityBound: expected sampled count w = W m / n must exceed "
        "tau");
  }
  return std::exp(-(w - tau) * (w - tau) / (2.0 * w));
}

// 2 exp(-gamma^2 mu / 3): chance that a count with mean mu misses by more
// than a gamma fraction.
inline double FreqErrorBound(double gamma, double mu) {
  if (!(gamma > 0.0)) throw DomainError("FreqErrorBound: gamma must be > 0");
  if (!(mu > 0.0)) throw DomainError("FreqErrorBound: mu must be > 0");
  return 2.0 * std::exp(-gamma * gamma * mu / 3.0);
}

// Smallest relative frequency phi estimated within relative error gamma
// except with probability beta: (3 / gamma^2) ln(1 / (2 beta)) / m.
inline double PhiSolve(double gamma, double beta, double m) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("PhiSolve: gamma must lie in (0, 1)");
  }
  if (!(beta > 0.0 && beta < 0.5)) {
    throw DomainError("PhiSolve: beta must lie in (0, 1/2)");
  }
  return 3.0 / (gamma * gamma) * std::log(1.0 / (2.0 * beta)) / m;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_ORACLES_H_
