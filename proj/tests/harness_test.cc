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

#include "sampthresh/harness.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace sampthresh {
namespace {

ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.datasets = {DatasetSource{"geometric", 20000, 64, "", ""},
                  DatasetSource{"binomial", 20000, 64, "", ""}};
  cfg.epsilons = {0.5, 1.0};
  cfg.repetitions = 3;
  cfg.base_seed = 99;
  cfg.threads = 1;
  return cfg;
}

std::string Csv(const ExperimentResult& r) {
  std::ostringstream s;
  WriteCsv(s, r);
  return s.str();
}

TEST(MetricsTest, MeanAbsError) {
  Histogram truth = Histogram::FromSample(std::vector<BucketId>{0, 0, 0, 1}, 4);
  FrequencyEstimate est;
  est.num_buckets = 4;
  est.values = {{0, 0.5}, {2, 0.1}};
  // |0.5 - 0.75| + |0 - 0.25| + |0.1 - 0| + 0, over 4 buckets.
  EXPECT_NEAR(MeanAbsError(est, truth), 0.6 / 4.0, 1e-15);
}

TEST(MetricsTest, TopKRecallBreaksTiesBySmallerId) {
  Histogram truth = Histogram::FromSample(std::vector<BucketId>{3, 3, 3, 1, 1, 2}, 5);
  FrequencyEstimate est;
  est.num_buckets = 5;
  est.values = {{3, 0.4}};
  // Estimate top-2 is {3, 0} (0 wins the tie at zero); truth top-2 is {3, 1}.
  EXPECT_DOUBLE_EQ(TopKRecall(est, truth, 2), 0.5);
  EXPECT_DOUBLE_EQ(TopKRecall(est, truth, 1), 1.0);
  EXPECT_THROW(TopKRecall(est, truth, 0), InvalidInputError);
}

TEST(MeanAndStderrTest, MatchesSampleDeviationOverRootCount) {
  const std::vector<double> v{1.0, 2.0, 4.0, 7.0};
  const auto [mean, se] = MeanAndStderr(v);
  EXPECT_DOUBLE_EQ(mean, 3.5);
  const double sd = std::sqrt(((2.5 * 2.5) + (1.5 * 1.5) + (0.5 * 0.5) + (3.5 * 3.5)) / 3.0);
  EXPECT_NEAR(se, sd / 2.0, 1e-15);
  EXPECT_EQ(MeanAndStderr({5.0}).second, 0.0);
}

TEST(RunExperimentTest, SingleRepetitionHasZeroStderr) {
  ExperimentConfig cfg = SmallConfig();
  cfg.repetitions = 1;
  const ExperimentResult r = RunExperiment(cfg);
  ASSERT_FALSE(r.aggregates.empty());
  for (const AggregateRecord& a : r.aggregates) {
    EXPECT_EQ(a.stderr_, 0.0);
    EXPECT_EQ(a.reps, 1);
  }
  for (const MetricRecord& rec : r.records) {
    const auto a = FindAggregate(r, rec.mechanism, rec.dataset, rec.epsilon, rec.metric);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->mean, rec.value);
  }
}

TEST(RunExperimentTest, AggregateStderrIdentity) {
  const ExperimentResult r = RunExperiment(SmallConfig());
  for (const AggregateRecord& a : r.aggregates) {
    std::vector<double> values;
    for (const MetricRecord& rec : r.records) {
      if (rec.mechanism == a.mechanism && rec.dataset == a.dataset &&
          rec.epsilon == a.epsilon && rec.metric == a.metric) {
        values.push_back(rec.value);
      }
    }
    ASSERT_EQ(values.size(), 3u);
    const auto [mean, se] = MeanAndStderr(values);
    EXPECT_EQ(a.mean, mean);
    EXPECT_EQ(a.stderr_, se);
  }
}

TEST(RunExperimentTest, SampleThresholdAlone) {
  ExperimentConfig cfg = SmallConfig();
  cfg.mechanisms = {MechanismKind::kSampleThreshold};
  const ExperimentResult r = RunExperiment(cfg);
  for (const MetricRecord& rec : r.records) EXPECT_EQ(rec.mechanism, "sample_threshold");
  EXPECT_EQ(r.records.size(), 2u * 2u * 3u * 2u);
}

TEST(RunExperimentTest, DeterministicAcrossThreadCounts) {
  ExperimentConfig cfg = SmallConfig();
  const std::string one = Csv(RunExperiment(cfg));
  cfg.threads = 4;
  EXPECT_EQ(Csv(RunExperiment(cfg)), one);
  cfg.base_seed = 100;
  EXPECT_NE(Csv(RunExperiment(cfg)), one);
}

TEST(RunExperimentTest, CsvHeaderIsExact) {
  const std::string csv = Csv(RunExperiment(SmallConfig()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "mechanism,dataset,epsilon,B,rep,metric,value");
}

TEST(RunExperimentTest, FailuresBecomeErrorRows) {
  ExperimentConfig cfg = SmallConfig();
  cfg.datasets.push_back(DatasetSource{"corpus", 0, 64, "/nonexistent/corpus.txt", "missing"});
  const ExperimentResult r = RunExperiment(cfg);
  EXPECT_EQ(r.errors.size(), 2u * 3u * 4u);
  for (const MetricRecord& e : r.errors) {
    EXPECT_EQ(e.dataset, "missing");
    EXPECT_EQ(e.metric, "error");
    EXPECT_FALSE(e.error.empty());
  }
  EXPECT_TRUE(FindAggregate(r, "sample_threshold", "geometric", 0.5, "topk_recall").has_value());
}

TEST(RunExperimentTest, ShuffleSaturationIsReported) {
  ExperimentConfig cfg = SmallConfig();
  cfg.epsilons = {0.1};
  cfg.mechanisms = {MechanismKind::kShuffleBernoulli};
  const ExperimentResult r = RunExperiment(cfg);
  const nlohmann::json j = AggregatesToJson(cfg, r);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_TRUE(j["aggregates"][0].value("noise_saturated", false));
}

TEST(ConfigTest, ParsesJson) {
  const auto j = nlohmann::json::parse(R"({
    "datasets": [{"kind": "binomial", "n": 1000, "B": 32}],
    "epsilons": [0.1, 1.0],
    "mechanisms": ["sample_threshold", "central_laplace"],
    "repetitions": 2,
    "k_fraction": 0.25
  })");
  const ExperimentConfig cfg = ConfigFromJson(j);
  ASSERT_EQ(cfg.datasets.size(), 1u);
  EXPECT_EQ(cfg.datasets[0].num_buckets, 32u);
  EXPECT_EQ(cfg.mechanisms.size(), 2u);
  EXPECT_EQ(cfg.repetitions, 2);
  EXPECT_DOUBLE_EQ(cfg.k_fraction, 0.25);
}

TEST(ConfigTest, RejectsUnknownNames) {
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"mechanisms": ["rappor"]})")),
               InvalidInputError);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"dataset": {"kind": "zipf"}})")),
               InvalidInputError);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"repetitions": "ten"})")),
               InvalidInputError);
}

}  // namespace
}  // namespace sampthresh
