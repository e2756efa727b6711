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

#ifndef SAMPTHRESH_HARNESS_H_
#define SAMPTHRESH_HARNESS_H_

// Accuracy / recall sweeps comparing sample-and-threshold with the baseline
// mechanisms on a shared sampled cohort.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sampthresh/baselines.h"
#include "sampthresh/calibration.h"
#include "sampthresh/datasets.h"
#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/mechanism.h"
#include "sampthresh/random.h"

namespace sampthresh {

inline constexpr int kSchemaVersion = 1;

enum class MechanismKind {
  kSampleThreshold,
  kCentralLaplace,
  kLdpHadamard,
  kShuffleBernoulli,
};

inline std::string MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSampleThreshold:
      return "sample_threshold";
    case MechanismKind::kCentralLaplace:
      return "central_laplace";
    case MechanismKind::kLdpHadamard:
      return "ldp_hadamard";
    case MechanismKind::kShuffleBernoulli:
      return "shuffle_bernoulli";
  }
  return "unknown";
}

inline MechanismKind ParseMechanism(const std::string& name) {
  for (MechanismKind k :
       {MechanismKind::kSampleThreshold, MechanismKind::kCentralLaplace,
        MechanismKind::kLdpHadamard, MechanismKind::kShuffleBernoulli}) {
    if (MechanismName(k) == name) return k;
  }
  throw InvalidInputError("unknown mechanism '" + name + "'");
}

struct DatasetSource {
  std::string kind = "geometric";  // binomial | geometric | corpus
  std::uint64_t n = 100000;
  std::uint64_t num_buckets = 256;
  std::string corpus_path;
  std::string name;  // defaults to kind

  std::string Label() const { return name.empty() ? kind : name; }
};

struct ExperimentConfig {
  std::vector<DatasetSource> datasets{DatasetSource{}};
  std::vector<double> epsilons{0.1, 0.2, 0.3, 0.4, 0.5,
                               0.6, 0.7, 0.8, 0.9, 1.0};
  double delta = 1e-8;
  double alpha = 1.0 / 6.0;
  std::vector<MechanismKind> mechanisms{
      MechanismKind::kSampleThreshold, MechanismKind::kCentralLaplace,
      MechanismKind::kLdpHadamard, MechanismKind::kShuffleBernoulli};
  int repetitions = 10;
  double k_fraction = 0.1;
  std::uint64_t base_seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;
  double shuffle_c_q = kShuffleNoiseConstant;

  void Validate() const {
    if (repetitions < 1) throw InvalidInputError("repetitions must be >= 1");
    if (datasets.empty()) throw InvalidInputError("no datasets configured");
    if (epsilons.empty()) throw InvalidInputError("epsilon grid is empty");
    for (double e : epsilons) {
      if (!(e > 0.0)) throw InvalidInputError("epsilon values must be > 0");
    }
    if (mechanisms.empty()) throw InvalidInputError("no mechanisms configured");
    if (!(k_fraction > 0.0 && k_fraction <= 1.0)) {
      throw InvalidInputError("k_fraction must lie in (0, 1]");
    }
    for (const DatasetSource& d : datasets) {
      if (d.kind != "binomial" && d.kind != "geometric" && d.kind != "corpus") {
        throw InvalidInputError("unknown dataset kind '" + d.kind + "'");
      }
      if (d.kind == "corpus" && d.corpus_path.empty()) {
        throw InvalidInputError("corpus dataset needs a path");
      }
    }
  }
};

inline ExperimentConfig ConfigFromJson(const nlohmann::json& j) {
  ExperimentConfig cfg;
  auto read_dataset = [](const nlohmann::json& d) {
    DatasetSource source;
    source.kind = d.value("kind", source.kind);
    source.n = d.value("n", source.n);
    source.num_buckets = d.value("B", source.num_buckets);
    source.corpus_path = d.value("path", std::string{});
    source.name = d.value("name", std::string{});
    return source;
  };
  try {
    if (j.contains("datasets")) {
      cfg.datasets.clear();
      for (const auto& d : j.at("datasets")) cfg.datasets.push_back(read_dataset(d));
    } else if (j.contains("dataset")) {
      cfg.datasets = {read_dataset(j.at("dataset"))};
    }
    if (j.contains("epsilons")) {
      cfg.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    cfg.delta = j.value("delta", cfg.delta);
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("mechanisms")) {
      cfg.mechanisms.clear();
      for (const auto& m : j.at("mechanisms")) {
        cfg.mechanisms.push_back(ParseMechanism(m.get<std::string>()));
      }
    }
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.k_fraction = j.value("k_fraction", cfg.k_fraction);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.shuffle_c_q = j.value("shuffle_c_q", cfg.shuffle_c_q);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("experiment config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

// (1/B) sum_b |est(b) - truth(b)/n| over all B buckets.
inline double MeanAbsError(const FrequencyEstimate& estimate,
                           const Histogram& truth) {
  if (estimate.num_buckets != truth.num_buckets()) {
    throw InvalidInputError("MeanAbsError: bucket counts differ");
  }
  const double n = static_cast<double>(truth.Total());
  const std::uint64_t buckets = truth.num_buckets();
  if (buckets == 0) return 0.0;
  double sum = 0.0;
  for (BucketId b = 0; b < buckets; ++b) {
    const double f = n > 0.0 ? static_cast<double>(truth.count(b)) / n : 0.0;
    sum += std::abs(estimate.at(b) - f);
  }
  return sum / static_cast<double>(buckets);
}

// The k buckets with the largest values, ties broken by smaller bucket id.
inline std::vector<BucketId> TopK(const std::vector<double>& values,
                                  std::size_t k) {
  std::vector<BucketId> order(values.size());
  std::iota(order.begin(), order.end(), BucketId{0});
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), [&](BucketId a, BucketId b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

// |topk(estimate) & topk(truth)| / k.
inline double TopKRecall(const FrequencyEstimate& estimate,
                         const Histogram& truth, std::size_t k) {
  if (k < 1) throw InvalidInputError("TopKRecall: k must be >= 1");
  const std::uint64_t buckets = truth.num_buckets();
  std::vector<double> est(buckets), tru(buckets);
  for (BucketId b = 0; b < buckets; ++b) {
    est[b] = estimate.at(b);
    tru[b] = static_cast<double>(truth.count(b));
  }
  std::vector<BucketId> a = TopK(est, k);
  std::vector<BucketId> t = TopK(tru, k);
  std::sort(a.begin(), a.end());
  std::sort(t.begin(), t.end());
  std::vector<BucketId> common;
  std::set_intersection(a.begin(), a.end(), t.begin(), t.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

struct MetricRecord {
  std::string mechanism;
  std::string dataset;
  double epsilon = 0.0;
  std::uint64_t num_buckets = 0;
  int rep = 0;
  std::string metric;  // mean_abs_error | topk_recall | error
  double value = 0.0;
  std::string error;   // set on error rows
  bool noise_saturated = false;
};

struct AggregateRecord {
  std::string mechanism;
  std::string dataset;
  double epsilon = 0.0;
  std::uint64_t num_buckets = 0;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  int reps = 0;
  bool noise_saturated = false;
};

struct ExperimentResult {
  std::vector<MetricRecord> records;
  std::vector<AggregateRecord> aggregates;
  std::vector<MetricRecord> errors;
};

// Mean and standard error (sample standard deviation / sqrt(count)).
inline std::pair<double, double> MeanAndStderr(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

namespace internal {

inline Dataset MaterializeDataset(const DatasetSource& source, std::uint64_t seed) {
  if (source.kind == "binomial") return GenBinomial(source.n, source.num_buckets, seed);
  if (source.kind == "geometric") return GenGeometric(source.n, source.num_buckets, seed);
  return IngestCorpus(source.corpus_path, source.num_buckets).dataset;
}

// All mechanisms for one (dataset, epsilon, rep) cell.
inline std::vector<MetricRecord> RunCell(const ExperimentConfig& cfg,
                                         const DatasetSource& source,
                                         const Dataset& data,
                                         const Histogram& truth, double epsilon,
                                         int rep) {
  std::vector<MetricRecord> out;
  const std::uint64_t rep_seed =
      DeriveSeed(cfg.base_seed, static_cast<std::uint64_t>(rep));
  const std::size_t k = static_cast<std::size_t>(std::ceil(
      static_cast<double>(data.num_buckets()) * cfg.k_fraction));
  auto emit_error = [&](MechanismKind kind, const std::string& what) {
    MetricRecord r;
    r.mechanism = MechanismName(kind);
    r.dataset = source.Label();
    r.epsilon = epsilon;
    r.num_buckets = data.num_buckets();
    r.rep = rep;
    r.metric = "error";
    r.value = std::nan("");
    r.error = what;
    out.push_back(std::move(r));
  };

  PrivacyParams params;
  Sample sample;
  try {
    params = Calibrate(epsilon, cfg.delta, cfg.alpha);
    sample = SampleBernoulli(data, params.p_s, DeriveSeed(rep_seed, "sample"));
  } catch (const std::exception& e) {
    for (MechanismKind kind : cfg.mechanisms) emit_error(kind, e.what());
    return out;
  }
  const double scale = params.p_s * static_cast<double>(data.size());

  for (MechanismKind kind : cfg.mechanisms) {
    try {
      const std::uint64_t noise_seed =
          DeriveSeed(rep_seed, "noise:" + MechanismName(kind));
      FrequencyEstimate est;
      bool saturated = false;
      switch (kind) {
        case MechanismKind::kSampleThreshold:
          est = EstimateFrequencies(
              ThresholdHistogram(sample, params.tau, data.num_buckets()),
              data.size(), params.p_s);
          break;
        case MechanismKind::kCentralLaplace:
          est = CentralLaplace(Histogram::FromSample(sample, data.num_buckets()),
                               epsilon, scale, noise_seed);
          break;
        case MechanismKind::kLdpHadamard:
          est = LdpHadamard(sample, epsilon, data.num_buckets(), scale,
                            noise_seed);
          break;
        case MechanismKind::kShuffleBernoulli: {
          ShuffleEstimate s =
              ShuffleBernoulli(sample, epsilon, cfg.delta, data.num_buckets(),
                               scale, noise_seed, cfg.shuffle_c_q);
          est = std::move(s.estimate);
          saturated = s.noise.saturated;
          break;
        }
      }
      for (const char* metric : {"mean_abs_error", "topk_recall"}) {
        MetricRecord r;
        r.mechanism = MechanismName(kind);
        r.dataset = source.Label();
        r.epsilon = epsilon;
        r.num_buckets = data.num_buckets();
        r.rep = rep;
        r.metric = metric;
        r.value = std::string_view(metric) == "mean_abs_error"
                      ? MeanAbsError(est, truth)
                      : TopKRecall(est, truth, k);
        r.noise_saturated = saturated;
        out.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      emit_error(kind, e.what());
    }
  }
  return out;
}

}  // namespace internal

// Runs every (dataset, epsilon, repetition) cell, in parallel, and merges the
// records in a fixed order so output depends only on the config.
inline ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  struct Population {
    DatasetSource source;
    std::optional<Dataset> data;
    Histogram truth;
    std::string error;
  };
  std::vector<Population> populations;
  for (std::size_t i = 0; i < cfg.datasets.size(); ++i) {
    Population p{cfg.datasets[i], std::nullopt, Histogram{}, {}};
    try {
      p.data = internal::MaterializeDataset(
          p.source, DeriveSeed(cfg.base_seed, "dataset:" + p.source.Label()));
      p.truth = TrueHistogram(*p.data);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    populations.push_back(std::move(p));
  }

  struct Task {
    std::size_t population;
    double epsilon;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < populations.size(); ++p) {
    for (double eps : cfg.epsilons) {
      for (int rep = 0; rep < cfg.repetitions; ++rep) tasks.push_back({p, eps, rep});
    }
  }

  std::vector<std::vector<MetricRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      const Population& pop = populations[t.population];
      if (!pop.data) {
        for (MechanismKind kind : cfg.mechanisms) {
          MetricRecord r;
          r.mechanism = MechanismName(kind);
          r.dataset = pop.source.Label();
          r.epsilon = t.epsilon;
          r.num_buckets = pop.source.num_buckets;
          r.rep = t.rep;
          r.metric = "error";
          r.value = std::nan("");
          r.error = pop.error;
          results[i].push_back(std::move(r));
        }
        continue;
      }
      results[i] = internal::RunCell(cfg, pop.source, *pop.data, pop.truth,
                                     t.epsilon, t.rep);
    }
  };
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult out;
  using CellKey = std::tuple<std::string, std::string, double, std::uint64_t,
                             std::string>;
  std::map<CellKey, std::vector<double>> cells;
  std::map<CellKey, bool> saturation;
  std::vector<CellKey> order;
  for (auto& batch : results) {
    for (MetricRecord& r : batch) {
      if (r.metric == "error") {
        out.errors.push_back(r);
        out.records.push_back(std::move(r));
        continue;
      }
      CellKey key{r.mechanism, r.dataset, r.epsilon, r.num_buckets, r.metric};
      auto [it, inserted] = cells.try_emplace(key);
      if (inserted) order.push_back(key);
      it->second.push_back(r.value);
      saturation[key] = saturation[key] || r.noise_saturated;
      out.records.push_back(std::move(r));
    }
  }
  for (const CellKey& key : order) {
    const auto [mean, se] = MeanAndStderr(cells[key]);
    AggregateRecord a;
    std::tie(a.mechanism, a.dataset, a.epsilon, a.num_buckets, a.metric) = key;
    a.mean = mean;
    a.stderr_ = se;
    a.reps = static_cast<int>(cells[key].size());
    a.noise_saturated = saturation[key];
    out.aggregates.push_back(std::move(a));
  }
  return out;
}

// Shortest round-trip representation of a double.
inline std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream s;
  s.precision(17);
  s << x;
  double back = 0.0;
  for (int p = 1; p <= 17; ++p) {
    std::ostringstream t;
    t.precision(p);
    t << x;
    std::istringstream(t.str()) >> back;
    if (back == x) return t.str();
  }
  return s.str();
}

inline constexpr const char* kCsvHeader =
    "mechanism,dataset,epsilon,B,rep,metric,value";

inline void WriteCsv(std::ostream& out, const ExperimentResult& result) {
  out << kCsvHeader << '\n';
  for (const MetricRecord& r : result.records) {
    out << r.mechanism << ',' << r.dataset << ',' << FormatDouble(r.epsilon)
        << ',' << r.num_buckets << ',' << r.rep << ',' << r.metric << ','
        << FormatDouble(r.value) << '\n';
  }
}

inline nlohmann::json AggregatesToJson(const ExperimentConfig& cfg,
                                       const ExperimentResult& result) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["base_seed"] = cfg.base_seed;
  j["repetitions"] = cfg.repetitions;
  j["delta"] = cfg.delta;
  j["alpha"] = cfg.alpha;
  nlohmann::json cells = nlohmann::json::array();
  for (const AggregateRecord& a : result.aggregates) {
    nlohmann::json c{{"mechanism", a.mechanism}, {"dataset", a.dataset},
                     {"epsilon", a.epsilon},     {"B", a.num_buckets},
                     {"metric", a.metric},       {"mean", a.mean},
                     {"stderr", a.stderr_},      {"reps", a.reps}};
    if (a.noise_saturated) c["noise_saturated"] = true;
    cells.push_back(std::move(c));
  }
  j["aggregates"] = std::move(cells);
  nlohmann::json errors = nlohmann::json::array();
  for (const MetricRecord& r : result.errors) {
    errors.push_back({{"mechanism", r.mechanism}, {"dataset", r.dataset},
                      {"epsilon", r.epsilon}, {"B", r.num_buckets},
                      {"rep", r.rep}, {"error", r.error}});
  }
  j["errors"] = std::move(errors);
  return j;
}

// Mean of an aggregate cell, or nullopt when absent.
inline std::optional<AggregateRecord> FindAggregate(
    const ExperimentResult& result, const std::string& mechanism,
    const std::string& dataset, double epsilon, const std::string& metric) {
  for (const AggregateRecord& a : result.aggregates) {
    if (a.mechanism == mechanism && a.dataset == dataset &&
        a.epsilon == epsilon && a.metric == metric) {
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_HARNESS_H_
