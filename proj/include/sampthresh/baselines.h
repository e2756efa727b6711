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

#ifndef SAMPTHRESH_BASELINES_H_
#define SAMPTHRESH_BASELINES_H_

// Comparison mechanisms run on the same sampled cohort as the
// sample-and-threshold histogram: central Laplace noise, local DP via
// Hadamard response, and shuffle-model Bernoulli noise. All three return
// debiased (hence possibly negative) frequency estimates scaled by the
// expected sample size.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/random.h"

namespace sampthresh {

enum class BaselineKind { kCentralLaplace, kLdpHadamard, kShuffleBernoulli };

inline std::string_view BaselineName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kCentralLaplace:
      return "central_laplace";
    case BaselineKind::kLdpHadamard:
      return "ldp_hadamard";
    case BaselineKind::kShuffleBernoulli:
      return "shuffle_bernoulli";
  }
  return "unknown";
}

// Laplace(0, b) by inverse CDF.
inline double SampleLaplace(Rng& rng, double b) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double x = u(rng);
  while (x == -0.5) x = u(rng);
  return -b * std::copysign(1.0, x) * std::log1p(-2.0 * std::abs(x));
}

// Adds Laplace(1/epsilon) to every one of the B sampled counts (zeros
// included) and divides by `scale`. Sensitivity 1 under add/remove of one
// client. epsilon = +inf adds no noise.
inline FrequencyEstimate CentralLaplace(const Histogram& sample_counts,
                                        double epsilon, double scale,
                                        std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw DomainError("CentralLaplace: epsilon must be > 0");
  if (!(scale > 0.0)) throw DomainError("CentralLaplace: scale must be > 0");
  Rng rng = MakeRng(seed);
  const double b = std::isinf(epsilon) ? 0.0 : 1.0 / epsilon;
  FrequencyEstimate est;
  est.num_buckets = sample_counts.num_buckets();
  est.scale = scale;
  for (BucketId bucket = 0; bucket < est.num_buckets; ++bucket) {
    const double noisy = static_cast<double>(sample_counts.count(bucket)) +
                         (b > 0.0 ? SampleLaplace(rng, b) : 0.0);
    est.values.emplace_hint(est.values.end(), bucket, noisy / scale);
  }
  return est;
}

// In-place fast Walsh-Hadamard transform (unnormalized).
inline void WalshHadamard(std::span<double> v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

// Hadamard response. Each client draws a coefficient index j uniformly from
// [0, K), K = B rounded up to a power of two, and reports H[x][j] in {-1, 1}
// through randomized response that keeps the sign with probability
// e^eps / (1 + e^eps). The server sums reports per coefficient and inverts:
// est(b) = c sum_j Y_j H[b][j] / scale, c = (e^eps + 1) / (e^eps - 1).
inline FrequencyEstimate LdpHadamard(std::span<const BucketId> clients,
                                     double epsilon, std::uint64_t num_buckets,
                                     double scale, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw DomainError("LdpHadamard: epsilon must be > 0");
  if (!(scale > 0.0)) throw DomainError("LdpHadamard: scale must be > 0");
  if (num_buckets == 0) throw DomainError("LdpHadamard: B must be positive");
  const std::uint64_t k = std::bit_ceil(num_buckets);
  const double keep =
      std::isinf(epsilon) ? 1.0 : 1.0 / (1.0 + std::exp(-epsilon));
  const double debias = std::isinf(epsilon) ? 1.0 : 1.0 / std::tanh(epsilon / 2);

  Rng rng = MakeRng(seed);
  std::uniform_int_distribution<std::uint64_t> coefficient(0, k - 1);
  std::bernoulli_distribution truthful(keep);
  std::vector<double> sums(k, 0.0);
  for (BucketId x : clients) {
    if (x >= num_buckets) throw InvalidInputError("LdpHadamard: bucket >= B");
    const std::uint64_t j = coefficient(rng);
    double bit = (std::popcount(x & j) & 1) ? -1.0 : 1.0;
    if (!truthful(rng)) bit = -bit;
    sums[j] += bit;
  }
  WalshHadamard(sums);
  FrequencyEstimate est;
  est.num_buckets = num_buckets;
  est.scale = scale;
  for (BucketId b = 0; b < num_buckets; ++b) {
    est.values.emplace_hint(est.values.end(), b, debias * sums[b] / scale);
  }
  return est;
}

// Default constant in q = c_q ln(2/delta) / (eps^2 s).
inline constexpr double kShuffleNoiseConstant = 1.0;

struct ShuffleNoise {
  double q = 0.0;
  // The formula asked for q > 1/2 and q was clamped to 1/2; the cited
  // (epsilon, delta) guarantee is then not established for this cohort.
  bool saturated = false;
};

inline ShuffleNoise ShuffleNoiseProbability(double epsilon, double delta,
                                            std::uint64_t cohort_size,
                                            double c_q = kShuffleNoiseConstant) {
  if (!(epsilon > 0.0)) throw DomainError("shuffle: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("shuffle: delta must lie in (0, 1)");
  }
  if (!(c_q >= 0.0)) throw DomainError("shuffle: c_q must be >= 0");
  if (cohort_size == 0) return ShuffleNoise{0.5, true};
  const double q = c_q * std::log(2.0 / delta) /
                   (epsilon * epsilon * static_cast<double>(cohort_size));
  return q > 0.5 ? ShuffleNoise{0.5, true} : ShuffleNoise{q, false};
}

struct ShuffleEstimate {
  FrequencyEstimate estimate;
  ShuffleNoise noise;
};

// Each of the s clients sends its one-hot vector plus an independent
// Bernoulli(q) bit per cell. The aggregate noise in a cell is Binomial(s, q),
// drawn directly. The server subtracts s q and divides by `scale`.
inline ShuffleEstimate ShuffleBernoulliWithNoise(
    std::span<const BucketId> clients, double q, std::uint64_t num_buckets,
    double scale, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 0.5)) throw DomainError("shuffle: q must be in [0, 1/2]");
  if (!(scale > 0.0)) throw DomainError("shuffle: scale must be > 0");
  std::vector<double> cells(num_buckets, 0.0);
  for (BucketId x : clients) {
    if (x >= num_buckets) throw InvalidInputError("shuffle: bucket >= B");
    cells[x] += 1.0;
  }
  const auto s = static_cast<std::int64_t>(clients.size());
  Rng rng = MakeRng(seed);
  ShuffleEstimate out;
  out.noise = ShuffleNoise{q, false};
  out.estimate.num_buckets = num_buckets;
  out.estimate.scale = scale;
  for (BucketId b = 0; b < num_buckets; ++b) {
    double noise = 0.0;
    if (q > 0.0 && s > 0) {
      std::binomial_distribution<std::int64_t> bits(s, q);
      noise = static_cast<double>(bits(rng));
    }
    out.estimate.values.emplace_hint(
        out.estimate.values.end(), b,
        (cells[b] + noise - static_cast<double>(s) * q) / scale);
  }
  return out;
}

inline ShuffleEstimate ShuffleBernoulli(std::span<const BucketId> clients,
                                        double epsilon, double delta,
                                        std::uint64_t num_buckets, double scale,
                                        std::uint64_t seed,
                                        double c_q = kShuffleNoiseConstant) {
  const ShuffleNoise noise =
      ShuffleNoiseProbability(epsilon, delta, clients.size(), c_q);
  ShuffleEstimate out =
      ShuffleBernoulliWithNoise(clients, noise.q, num_buckets, scale, seed);
  out.noise = noise;
  return out;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_BASELINES_H_
