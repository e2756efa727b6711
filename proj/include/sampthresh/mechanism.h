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

#ifndef SAMPTHRESH_MECHANISM_H_
#define SAMPTHRESH_MECHANISM_H_

// The sample-and-threshold histogram: sample clients, tally their votes,
// release every count >= tau verbatim and drop the rest. No noise is added;
// the sampling alone supplies the privacy guarantee.

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "sampthresh/calibration.h"
#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/sampling.h"

namespace sampthresh {

// Tallies `sample` and keeps buckets whose count is at least `tau`. Sentinel
// votes (ids >= B) must not survive; with tau >= 2 they never do.
inline Histogram ThresholdHistogram(std::span<const BucketId> sample,
                                    Count tau, std::uint64_t num_buckets) {
  if (tau < 1) throw InvalidInputError("ThresholdHistogram: tau must be >= 1");
  std::unordered_map<BucketId, Count> tally;
  tally.reserve(sample.size() / 4 + 16);
  for (BucketId b : sample) ++tally[b];
  Histogram raw(num_buckets);
  for (const auto& [b, c] : tally) {
    if (c < tau) continue;
    if (b >= num_buckets) {
      throw InvalidInputError(
          "ThresholdHistogram: a sentinel vote survived the threshold; "
          "cohort sampling needs tau >= 2");
    }
    raw.Add(b, c);
  }
  return raw.Thresholded(tau);
}

enum class SamplerKind { kBernoulli, kCohort };

struct MechanismOptions {
  SamplerKind sampler = SamplerKind::kBernoulli;
  // Concentration constant for the cohort sampler.
  double cohort_c = 10.0;
};

// Cohort configuration that emulates Bernoulli(p_s) sampling of `n` clients.
inline CohortConfig CohortFor(std::uint64_t n, double p_s, double c) {
  CohortConfig cfg;
  cfg.n = n;
  cfg.m = static_cast<std::uint64_t>(std::llround(p_s * static_cast<double>(n)));
  cfg.c = c;
  return cfg;
}

// Draws the sample the mechanism would aggregate for this seed.
inline Sample DrawSample(const Dataset& dataset, const PrivacyParams& params,
                         std::uint64_t seed,
                         const MechanismOptions& options = {}) {
  if (options.sampler == SamplerKind::kCohort) {
    if (params.tau < 2) {
      throw InvalidInputError("cohort sampling requires tau >= 2");
    }
    if (dataset.empty()) return {};
    return CohortSample(dataset,
                        CohortFor(dataset.size(), params.p_s, options.cohort_c),
                        seed);
  }
  return SampleBernoulli(dataset, params.p_s, seed);
}

// One run of the mechanism. Only the thresholded histogram is returned; the
// pre-threshold sample size is never exposed.
inline Histogram RunMechanism(const Dataset& dataset,
                              const PrivacyParams& params, std::uint64_t seed,
                              const MechanismOptions& options = {}) {
  params.Validate();
  return ThresholdHistogram(DrawSample(dataset, params, seed, options),
                            params.tau, dataset.num_buckets());
}

// count / (p_s n) for each released bucket. Divides by the expected sample
// size since the realized one is withheld.
inline FrequencyEstimate EstimateFrequencies(const Histogram& hist,
                                             std::uint64_t n, double p_s) {
  if (!hist.thresholded()) {
    throw InvalidInputError("EstimateFrequencies: histogram not thresholded");
  }
  if (!(p_s > 0.0) || n == 0) {
    throw DomainError("EstimateFrequencies: needs p_s > 0 and n > 0");
  }
  FrequencyEstimate est;
  est.num_buckets = hist.num_buckets();
  est.scale = p_s * static_cast<double>(n);
  for (const auto& [b, c] : hist) {
    est.values.emplace_hint(est.values.end(), b,
                            static_cast<double>(c) / est.scale);
  }
  return est;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_MECHANISM_H_
