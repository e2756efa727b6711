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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "sampthresh/calibration.h"
#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/mechanism.h"
#include "sampthresh/sampling.h"

namespace sampthresh {
namespace {

// Upper-tail p-value of a Pearson statistic.
double ChiSquarePValue(const std::vector<double>& observed,
                       const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) /
            expected[i];
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(DatasetTest, RejectsOutOfRangeIds) {
  EXPECT_THROW(Dataset({0, 1, 4}, 4), InvalidInputError);
  EXPECT_NO_THROW(Dataset({0, 1, 3}, 4));
}

TEST(HistogramTest, SparseStorage) {
  Histogram h(1u << 14);
  h.Add(5, 2);
  h.Add(9000, 0);
  EXPECT_EQ(h.size(), 1u);
  EXPECT_EQ(h.count(5), 2);
  EXPECT_EQ(h.count(9000), 0);
  EXPECT_FALSE(h.contains(9000));
}

TEST(HistogramTest, ThresholdKeepsCountsEqualToTau) {
  const Histogram h = Histogram::FromSample(std::vector<BucketId>{0, 0, 1, 2, 2, 2}, 3);
  const Histogram t = h.Thresholded(2);
  EXPECT_TRUE(t.thresholded());
  EXPECT_EQ(t.tau_applied(), 2);
  EXPECT_EQ(t.count(0), 2);
  EXPECT_FALSE(t.contains(1));
  EXPECT_EQ(t.count(2), 3);
  EXPECT_FALSE(h.thresholded());
}

TEST(HistogramTest, AddRejectsBadInput) {
  Histogram h(4);
  EXPECT_THROW(h.Add(4, 1), InvalidInputError);
  EXPECT_THROW(h.Add(0, -1), InvalidInputError);
}

TEST(ThresholdHistogramTest, EmptySampleGivesEmptyHistogram) {
  const Histogram h = ThresholdHistogram(Sample{}, 3, 10);
  EXPECT_TRUE(h.empty());
  EXPECT_TRUE(h.thresholded());
}

TEST(ThresholdHistogramTest, TauOneReleasesEverything) {
  const Sample s{3, 1, 3};
  const Histogram h = ThresholdHistogram(s, 1, 4);
  EXPECT_EQ(h.count(1), 1);
  EXPECT_EQ(h.count(3), 2);
}

TEST(ThresholdHistogramTest, SurvivingSentinelIsAnError) {
  const Sample s{0, 7, 7};
  EXPECT_THROW(ThresholdHistogram(s, 2, 4), InvalidInputError);
}

TEST(SamplingTest, ZeroProbabilitySamplesNobody) {
  EXPECT_TRUE(SampleClientIndices(1000, 0.0, 1).empty());
}

TEST(SamplingTest, RejectsProbabilityOne) {
  EXPECT_THROW(SampleClientIndices(10, 1.0, 1), DomainError);
}

TEST(SamplingTest, IndicesAreStrictlyIncreasing) {
  const auto idx = SampleClientIndices(100000, 0.2, 7);
  for (std::size_t i = 1; i < idx.size(); ++i) ASSERT_LT(idx[i - 1], idx[i]);
  ASSERT_FALSE(idx.empty());
  EXPECT_LT(idx.back(), 100000u);
}

TEST(SamplingTest, SameSeedSameSample) {
  EXPECT_EQ(SampleClientIndices(5000, 0.3, 42), SampleClientIndices(5000, 0.3, 42));
  EXPECT_NE(SampleClientIndices(5000, 0.3, 42), SampleClientIndices(5000, 0.3, 43));
}

TEST(SamplingTest, PerClientInclusionIsUniform) {
  // Chi-square over client positions pooled across seeds.
  constexpr std::size_t kN = 20;
  constexpr int kSeeds = 20000;
  constexpr double kP = 0.3;
  std::vector<double> hits(kN, 0.0);
  for (int seed = 0; seed < kSeeds; ++seed) {
    for (std::size_t i : SampleClientIndices(kN, kP, static_cast<std::uint64_t>(seed))) {
      hits[i] += 1.0;
    }
  }
  const std::vector<double> expected(kN, kSeeds * kP);
  EXPECT_GT(ChiSquarePValue(hits, expected), 1e-4);
}

TEST(SamplingTest, SampleSizeIsBinomial) {
  constexpr std::size_t kN = 1000;
  constexpr double kP = 0.1;
  double sum = 0.0, sum2 = 0.0;
  constexpr int kSeeds = 4000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const double s = static_cast<double>(
        SampleClientIndices(kN, kP, static_cast<std::uint64_t>(seed)).size());
    sum += s;
    sum2 += s * s;
  }
  const double mean = sum / kSeeds;
  const double var = sum2 / kSeeds - mean * mean;
  EXPECT_NEAR(mean, 100.0, 5.0 * std::sqrt(90.0 / kSeeds));
  EXPECT_NEAR(var, 90.0, 9.0);
}

TEST(CohortTest, SizeFormula) {
  CohortConfig c{10000, 100, 10.0};
  EXPECT_EQ(c.s(), 200u);
  c.c = 0.0;
  EXPECT_EQ(c.s(), 100u);
}

TEST(CohortTest, RejectsCohortLargerThanPopulation) {
  CohortConfig c{150, 100, 10.0};
  EXPECT_THROW(c.Validate(), InvalidInputError);
}

TEST(CohortTest, ZeroSlackMeansEveryoneParticipates) {
  Dataset d(std::vector<BucketId>(500, 1), 4);
  const Sample s = CohortSample(d, CohortConfig{500, 50, 0.0}, 3);
  ASSERT_EQ(s.size(), 50u);
  for (BucketId b : s) EXPECT_EQ(b, 1u);
}

TEST(CohortTest, ContactsDistinctClients) {
  std::vector<BucketId> items(1000);
  std::iota(items.begin(), items.end(), BucketId{0});
  Dataset d(items, 1000);
  const CohortConfig cfg{1000, 100, 10.0};
  const Sample s = CohortSample(d, cfg, 9);
  ASSERT_EQ(s.size(), cfg.s());
  std::vector<bool> seen(1000, false);
  for (BucketId b : s) {
    const BucketId client = IsSentinel(1000, b) ? b - 1000 : b;
    ASSERT_LT(client, 1000u);
    EXPECT_FALSE(seen[client]);
    seen[client] = true;
  }
}

TEST(CohortTest, MarginalParticipationIsMOverN) {
  constexpr std::uint64_t kN = 40;
  std::vector<BucketId> items(kN);
  std::iota(items.begin(), items.end(), BucketId{0});
  Dataset d(items, kN);
  const CohortConfig cfg{kN, 9, 2.0};  // s = 15
  constexpr int kSeeds = 20000;
  std::vector<double> hits(kN, 0.0);
  for (int seed = 0; seed < kSeeds; ++seed) {
    for (BucketId b : CohortSample(d, cfg, static_cast<std::uint64_t>(seed))) {
      if (!IsSentinel(kN, b)) hits[b] += 1.0;
    }
  }
  const std::vector<double> expected(kN, kSeeds * 9.0 / kN);
  EXPECT_GT(ChiSquarePValue(hits, expected), 1e-4);
}

TEST(CohortTest, ParticipantsNeverExceedS) {
  Dataset d(std::vector<BucketId>(5000, 0), 2);
  const CohortConfig cfg{5000, 100, 3.0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Sample s = CohortSample(d, cfg, seed);
    std::size_t real = 0;
    for (BucketId b : s) real += IsSentinel(2, b) ? 0 : 1;
    EXPECT_LE(real, cfg.s());
  }
}

TEST(CohortTest, BernoulliRarelyExceedsCohortSize) {
  // Pr[Bin(n, m/n) > m + 3 sqrt(m)] <= e^-3 by a Chernoff bound.
  constexpr std::size_t kN = 10000;
  constexpr double kM = 100.0;
  int exceed = 0;
  constexpr int kSeeds = 2000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    if (static_cast<double>(SampleClientIndices(kN, kM / kN, static_cast<std::uint64_t>(seed)).size()) >
        kM + 3.0 * std::sqrt(kM)) {
      ++exceed;
    }
  }
  EXPECT_LE(exceed, static_cast<int>(kSeeds * std::exp(-3.0)));
}

TEST(CohortTest, MatchesBernoulliReleasedCounts) {
  // 50 copies of bucket 0, 950 of bucket 1; the mean released count of
  // bucket 1 agrees between samplers.
  std::vector<BucketId> items(1000, 1);
  std::fill(items.begin(), items.begin() + 50, 0);
  Dataset d(items, 2);
  PrivacyParams p = Calibrate(2.0, 1e-3, 0.2);
  p.p_s = 0.1;
  p.tau = 2;
  MechanismOptions cohort{SamplerKind::kCohort, 10.0};
  double bern = 0.0, coh = 0.0;
  constexpr int kSeeds = 3000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    bern += static_cast<double>(RunMechanism(d, p, static_cast<std::uint64_t>(seed)).count(1));
    coh += static_cast<double>(
        RunMechanism(d, p, static_cast<std::uint64_t>(seed), cohort).count(1));
  }
  bern /= kSeeds;
  coh /= kSeeds;
  EXPECT_NEAR(bern, 95.0, 0.5);
  EXPECT_NEAR(coh, 95.0, 0.5);
}

TEST(MechanismTest, CohortNeedsTauAtLeastTwo) {
  Dataset d(std::vector<BucketId>(1000, 0), 2);
  PrivacyParams p = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  p.tau = 1;
  EXPECT_THROW(RunMechanism(d, p, 1, {SamplerKind::kCohort, 10.0}),
               InvalidInputError);
}

TEST(MechanismTest, DeterministicPerSeed) {
  std::vector<BucketId> items;
  for (int i = 0; i < 20000; ++i) items.push_back(static_cast<BucketId>(i % 7));
  Dataset d(items, 8);
  const PrivacyParams p = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  EXPECT_EQ(RunMechanism(d, p, 11), RunMechanism(d, p, 11));
}

TEST(MechanismTest, ReleasedCountsAreAtLeastTau) {
  std::vector<BucketId> items;
  for (int i = 0; i < 5000; ++i) items.push_back(static_cast<BucketId>((i * i) % 97));
  Dataset d(items, 97);
  const PrivacyParams p = Calibrate(1.0, 1e-6, 1.0 / 6.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& [b, c] : RunMechanism(d, p, seed)) EXPECT_GE(c, p.tau);
  }
}

TEST(MechanismTest, EmptyDatasetReleasesNothing) {
  Dataset d({}, 4);
  const PrivacyParams p = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  EXPECT_TRUE(RunMechanism(d, p, 1).empty());
}

TEST(MechanismTest, FrequencyEstimateIsUnbiasedForHeavyItem) {
  std::vector<BucketId> items(100000, 1);
  std::fill(items.begin(), items.begin() + 30000, 0);
  Dataset d(items, 2);
  const PrivacyParams p = Calibrate(1.0, 1e-8, 1.0 / 6.0);
  double mean = 0.0;
  constexpr int kSeeds = 200;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Histogram h = RunMechanism(d, p, static_cast<std::uint64_t>(seed));
    mean += EstimateFrequencies(h, d.size(), p.p_s).at(0);
  }
  EXPECT_NEAR(mean / kSeeds, 0.3, 0.003);
}

TEST(MechanismTest, EstimateNeedsThresholdedHistogram) {
  Histogram h(4);
  h.Add(1, 5);
  EXPECT_THROW(EstimateFrequencies(h, 100, 0.1), InvalidInputError);
}

}  // namespace
}  // namespace sampthresh
