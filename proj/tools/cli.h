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

#ifndef SAMPTHRESH_TOOLS_CLI_H_
#define SAMPTHRESH_TOOLS_CLI_H_

// Command-line front end. Each subcommand parses flags, calls one library
// entry point and serializes the result: JSON for single results, CSV for
// tables and sweeps. Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sampthresh/sampthresh.h"

namespace sampthresh::cli {

inline constexpr const char* kOutDirEnv = "SAMPTHRESH_OUT_DIR";

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Relative output paths land under $SAMPTHRESH_OUT_DIR when it is set.
inline std::filesystem::path ResolveOutput(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv(kOutDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

inline std::string DefaultOutDir() {
  const char* dir = std::getenv(kOutDirEnv);
  return dir != nullptr && *dir != '\0' ? std::string(dir) : std::string(".");
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string(), "cannot open for writing");
  f << contents;
  if (!f) throw IoError(path.string(), "write failed");
}

// Machine output goes to --out when given, stdout otherwise.
inline void Emit(std::ostream& out, const std::string& out_path,
                 const std::string& contents) {
  if (out_path.empty()) {
    out << contents;
  } else {
    WriteFile(ResolveOutput(out_path), contents);
  }
}

inline std::string DumpJson(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline nlohmann::json ParamsJson(const PrivacyParams& p) {
  return {{"epsilon", p.epsilon}, {"delta", p.delta}, {"alpha", p.alpha},
          {"p_s", p.p_s},         {"tau", p.tau}};
}

inline nlohmann::json BudgetJson(const CompositionBudget& b) {
  nlohmann::json j{{"per_level_epsilon", b.per_level_epsilon},
                   {"per_level_delta", b.per_level_delta},
                   {"levels", b.levels},
                   {"basic_epsilon", b.basic_epsilon},
                   {"basic_delta", b.basic_delta}};
  if (b.advanced_epsilon) {
    j["advanced_epsilon"] = *b.advanced_epsilon;
    j["advanced_delta"] = *b.advanced_delta;
  }
  return j;
}

inline std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open input file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

inline std::vector<double> ReadValues(const std::string& path) {
  std::vector<double> values;
  for (const std::string& line : ReadLines(path)) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0) throw InvalidInputError(path + ": not a number: " + line);
    values.push_back(v);
  }
  return values;
}

// Flags shared by every command that calibrates a mechanism.
struct PrivacyFlags {
  double epsilon = 1.0;
  double delta = 1e-8;
  double alpha = 1.0 / 6.0;

  void Register(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "privacy parameter epsilon")
        ->capture_default_str();
    app->add_option("--delta", delta, "privacy parameter delta")
        ->capture_default_str();
    app->add_option("--alpha", alpha,
                    "fraction of the maximal sampling rate 1 - exp(-epsilon)")
        ->capture_default_str();
  }

  PrivacyParams Calibrated() const { return Calibrate(epsilon, delta, alpha); }
};

// Where client data comes from: a generator, a corpus or a file of ids.
struct DatasetFlags {
  std::string kind = "geometric";
  std::uint64_t n = 100000;
  std::uint64_t num_buckets = 256;
  std::string corpus;
  std::string input;

  void Register(CLI::App* app) {
    app->add_option("--dataset", kind, "binomial | geometric")
        ->check(CLI::IsMember({"binomial", "geometric"}))
        ->capture_default_str();
    app->add_option("--n", n, "number of clients")->capture_default_str();
    app->add_option("--B", num_buckets, "number of buckets")->capture_default_str();
    app->add_option("--corpus", corpus, "text file; words hash into B buckets")
        ->check(CLI::ExistingFile);
    app->add_option("--input", input, "newline-delimited bucket ids")
        ->check(CLI::ExistingFile);
  }

  Dataset Load(std::uint64_t seed) const {
    if (!corpus.empty() && !input.empty()) {
      throw InvalidInputError("--corpus and --input are exclusive");
    }
    if (!corpus.empty()) return IngestCorpus(corpus, num_buckets).dataset;
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw IoError(input, "cannot open input file");
      return ReadDataset(in, num_buckets, input);
    }
    const std::uint64_t data_seed = DeriveSeed(seed, "dataset");
    if (kind == "binomial") return GenBinomial(n, num_buckets, data_seed);
    return GenGeometric(n, num_buckets, data_seed);
  }
};

inline int RunCalibrate(const PrivacyFlags& f, const std::string& out_path,
                        std::ostream& out, std::ostream& err) {
  const PrivacyParams p = f.Calibrated();
  const DeltaBound exact = DeltaBoundExact(p.epsilon, p.p_s, p.tau);
  const DeltaBound simplified = DeltaBoundSimplified(p.alpha, p.tau);
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"command", "calibrate"},
                   {"epsilon", p.epsilon},
                   {"delta", p.delta},
                   {"alpha", p.alpha},
                   {"p_s", p.p_s},
                   {"q", p.q()},
                   {"c_alpha", p.c_alpha()},
                   {"tau", p.tau},
                   {"delta_bound_exact", exact.delta},
                   {"log_delta_bound_exact", exact.log_delta},
                   {"delta_bound_simplified", simplified.delta},
                   {"log_delta_bound_simplified", simplified.log_delta}};
  Emit(out, out_path, DumpJson(j));
  err << "p_s = " << p.p_s << ", tau = " << p.tau
      << ", exact delta bound = " << exact.delta << "\n";
  return kExitOk;
}

struct RunFlags {
  PrivacyFlags privacy;
  DatasetFlags data;
  std::uint64_t seed = 0;
  bool cohort = false;
  double cohort_c = 10.0;
  std::string out;
};

inline int RunRun(const RunFlags& f, std::ostream& out, std::ostream& err) {
  const PrivacyParams p = f.privacy.Calibrated();
  const Dataset data = f.data.Load(f.seed);
  MechanismOptions options;
  options.sampler = f.cohort ? SamplerKind::kCohort : SamplerKind::kBernoulli;
  options.cohort_c = f.cohort_c;
  const Histogram hist = RunMechanism(data, p, f.seed, options);
  const FrequencyEstimate est = EstimateFrequencies(hist, data.size(), p.p_s);

  nlohmann::json buckets = nlohmann::json::array();
  for (const auto& [b, c] : hist) {
    buckets.push_back({{"bucket", b}, {"count", c}, {"frequency", est.at(b)}});
  }
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"command", "run"},
                   {"seed", f.seed},
                   {"params", ParamsJson(p)},
                   {"sampler", f.cohort ? "cohort" : "bernoulli"},
                   {"dataset", data.provenance()},
                   {"n", data.size()},
                   {"B", data.num_buckets()},
                   {"expected_sample_size", est.scale},
                   {"histogram", std::move(buckets)}};
  if (f.cohort) {
    const CohortConfig c = CohortFor(data.size(), p.p_s, f.cohort_c);
    j["cohort"] = {{"m", c.m}, {"s", c.s()}, {"c", c.c}};
  }
  Emit(out, f.out, DumpJson(j));
  err << hist.size() << " of " << data.num_buckets()
      << " buckets released at tau = " << p.tau << "\n";
  return kExitOk;
}

struct HhFlags {
  PrivacyFlags privacy;
  std::string input;
  std::string corpus;
  std::string alphabet;
  int beta = 0;
  int levels = 10;
  std::string mode = "restricted";
  std::uint64_t seed = 0;
  std::string out;
};

inline int RunHh(const HhFlags& f, std::ostream& out, std::ostream& err) {
  if (f.input.empty() == f.corpus.empty()) {
    throw InvalidInputError("hh needs exactly one of --input or --corpus");
  }
  std::string alphabet = f.alphabet;
  if (alphabet.empty()) {
    if (f.beta != 0) {
      if (f.beta < 2 || f.beta > 36) {
        throw InvalidInputError("--beta without --alphabet must lie in [2, 36]");
      }
      alphabet = std::string("0123456789abcdefghijklmnopqrstuvwxyz")
                     .substr(0, static_cast<std::size_t>(f.beta));
    } else {
      alphabet = "abcdefghijklmnopqrstuvwxyz";
    }
  } else if (f.beta != 0 && static_cast<std::size_t>(f.beta) != alphabet.size()) {
    throw InvalidInputError("--beta disagrees with the size of --alphabet");
  }
  std::vector<std::string> strings;
  if (!f.input.empty()) {
    strings = ReadLines(f.input);
  } else {
    std::ifstream in(f.corpus, std::ios::binary);
    if (!in) throw IoError(f.corpus, "cannot open corpus file");
    std::ostringstream text;
    text << in.rdbuf();
    strings = Tokenize(text.str());
  }
  const TrieDataset data = TrieDataset::FromStrings(strings, alphabet, f.levels);

  TrieConfig cfg;
  cfg.levels = f.levels;
  cfg.branching = data.branching();
  cfg.params = f.privacy.Calibrated();
  cfg.mode = f.mode == "unrestricted" ? TrieMode::kUnrestricted
                                      : TrieMode::kRestricted;
  const WeightedTrie trie = RunTrieHH(data, cfg, f.seed);

  nlohmann::json levels = nlohmann::json::array();
  for (int l = 1; l <= trie.levels(); ++l) {
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [prefix, count] : trie.level(l)) {
      nodes[data.Render(prefix)] = count;
    }
    levels.push_back(std::move(nodes));
  }
  // An item is a full-length prefix without an end symbol, or a prefix whose
  // last symbol is its first end symbol.
  nlohmann::json hitters = nlohmann::json::array();
  const char end = data.end_symbol();
  for (int l = 1; l <= trie.levels(); ++l) {
    for (const auto& [prefix, count] : trie.level(l)) {
      const bool ended = prefix.back() == end;
      if (ended ? (l > 1 && prefix[prefix.size() - 2] == end)
                : l != trie.levels()) {
        continue;
      }
      std::string item = data.Render(ended ? prefix.substr(0, prefix.size() - 1)
                                           : prefix);
      hitters.push_back({{"item", item},
                         {"count", count},
                         {"frequency", static_cast<double>(count) / trie.scale()}});
    }
  }
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"command", "hh"},
                   {"seed", f.seed},
                   {"params", ParamsJson(cfg.params)},
                   {"alphabet", alphabet},
                   {"beta", cfg.branching},
                   {"L", cfg.levels},
                   {"mode", f.mode},
                   {"n", data.size()},
                   {"budget", BudgetJson(trie.budget())},
                   {"trie", std::move(levels)},
                   {"heavy_hitters", std::move(hitters)}};
  Emit(out, f.out, DumpJson(j));
  err << trie.NodeCount() << " trie nodes, depth " << trie.Depth()
      << ", total budget (" << trie.budget().basic_epsilon << ", "
      << trie.budget().basic_delta << ")\n";
  return kExitOk;
}

struct QuantileFlags {
  PrivacyFlags privacy;
  std::string method = "trie";
  double phi = 0.5;
  int h = 10;
  int levels = 10;
  int beta = 2;
  std::uint64_t n = 100000;
  std::string input;
  std::uint64_t seed = 0;
  std::string out;
};

inline int RunQuantile(const QuantileFlags& f, std::ostream& out,
                       std::ostream& err) {
  const PrivacyParams p = f.privacy.Calibrated();
  const std::vector<double> values =
      f.input.empty() ? GenUniformValues(f.n, DeriveSeed(f.seed, "dataset"))
                      : ReadValues(f.input);
  QuantileResult r;
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"command", "quantile"},
                   {"seed", f.seed},
                   {"method", f.method},
                   {"phi", f.phi},
                   {"n", values.size()},
                   {"params", ParamsJson(p)}};
  if (f.method == "search") {
    r = BinarySearchQuantile(values, f.phi, f.h, p, f.seed);
    j["h"] = f.h;
  } else {
    TrieConfig cfg;
    cfg.levels = f.levels;
    cfg.branching = f.beta;
    cfg.params = p;
    const WeightedTrie trie =
        RunTrieHH(ValuesToTrieDataset(values, f.beta, f.levels), cfg, f.seed);
    r = HierarchicalQuantile(trie, f.phi);
    j["L"] = f.levels;
    j["beta"] = f.beta;
    j["budget"] = BudgetJson(trie.budget());
  }
  j["value"] = r.value;
  j["rank_error_bound"] = r.rank_error_bound;
  j["resolution"] = r.resolution;
  j["epsilon_spent"] = r.epsilon_spent;
  j["delta_spent"] = r.delta_spent;
  j["phi_in_range"] = r.phi_in_range;
  Emit(out, f.out, DumpJson(j));
  if (!r.phi_in_range) {
    err << "warning: phi = " << f.phi
        << " is within tau / m of the boundary; thresholding dominates the "
           "estimate\n";
  }
  err << "quantile " << f.phi << " ~ " << r.value << " (budget "
      << r.epsilon_spent << ", " << r.delta_spent << ")\n";
  return kExitOk;
}

struct VerifyFlags {
  std::size_t n = 12;
  double p_s = 0.3;
  std::int64_t tau = 2;
  std::vector<double> eps_grid{0.5, 1.0, 2.0};
  std::string out;
};

inline int RunVerify(const VerifyFlags& f, std::ostream& out,
                     std::ostream& err) {
  const NeighborPair pair = RepeatedItemPair(f.n);
  const std::vector<VerifyRow> rows =
      DpVerify(pair.d, pair.d_prime, f.p_s, f.tau, f.eps_grid);
  std::ostringstream csv;
  csv << "schema_version,epsilon,observed_delta,bound_delta,bound_applicable,"
         "certified\n";
  std::size_t failures = 0;
  for (const VerifyRow& r : rows) {
    csv << kSchemaVersion << ',' << FormatDouble(r.epsilon) << ','
        << FormatDouble(r.observed_delta) << ',' << FormatDouble(r.bound_delta)
        << ',' << (r.bound_applicable ? "true" : "false") << ','
        << (r.certified ? "true" : "false") << '\n';
    if (r.bound_applicable && !r.certified) ++failures;
  }
  Emit(out, f.out, csv.str());
  err << rows.size() << " epsilon values, " << failures
      << " exceed the exact bound\n";
  return kExitOk;
}

struct ExperimentFlags {
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::optional<int> threads;
};

inline int RunExperimentCommand(const ExperimentFlags& f, std::ostream& out,
                                std::ostream& err) {
  std::ifstream in(f.config);
  if (!in) throw IoError(f.config, "cannot open config");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(f.config + ": " + e.what());
  }
  ExperimentConfig cfg = ConfigFromJson(j);
  cfg.base_seed = f.seed;
  if (f.threads) cfg.threads = *f.threads;
  const ExperimentResult result = RunExperiment(cfg);

  const std::filesystem::path dir(f.out_dir.empty() ? DefaultOutDir() : f.out_dir);
  std::ostringstream csv;
  WriteCsv(csv, result);
  WriteFile(dir / "records.csv", csv.str());
  WriteFile(dir / "aggregates.json", DumpJson(AggregatesToJson(cfg, result)));
  nlohmann::json summary{{"schema_version", kSchemaVersion},
                         {"command", "experiment"},
                         {"seed", f.seed},
                         {"records", (dir / "records.csv").string()},
                         {"aggregates", (dir / "aggregates.json").string()},
                         {"cells", result.aggregates.size()},
                         {"errors", result.errors.size()}};
  out << DumpJson(summary);
  err << result.records.size() << " records, " << result.errors.size()
      << " error rows, written to " << dir.string() << "\n";
  return kExitOk;
}

struct GenFlags {
  std::string kind = "geometric";
  std::uint64_t n = 100000;
  std::uint64_t num_buckets = 256;
  std::uint64_t seed = 0;
  std::string out;
};

inline int RunGen(const GenFlags& f, std::ostream& out, std::ostream& err) {
  std::ostringstream text;
  if (f.kind == "uniform") {
    text.precision(17);
    for (double v : GenUniformValues(f.n, f.seed)) text << v << '\n';
  } else {
    const Dataset d = f.kind == "binomial" ? GenBinomial(f.n, f.num_buckets, f.seed)
                                           : GenGeometric(f.n, f.num_buckets, f.seed);
    WriteDataset(text, d);
  }
  Emit(out, f.out, text.str());
  err << "generated " << f.n << " " << f.kind << " items\n";
  return kExitOk;
}

// Parses argv and runs one subcommand.
inline int Dispatch(int argc, const char* const* argv, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Sample-and-threshold differential privacy toolkit", "sampthresh"};
  app.require_subcommand(1);

  PrivacyFlags calibrate_flags;
  std::string calibrate_out;
  CLI::App* calibrate = app.add_subcommand("calibrate", "p_s and tau for (epsilon, delta)");
  calibrate_flags.Register(calibrate);
  calibrate->add_option("--out", calibrate_out, "write JSON here instead of stdout");

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "one sample-and-threshold histogram");
  run_flags.privacy.Register(run);
  run_flags.data.Register(run);
  run->add_option("--seed", run_flags.seed, "random seed")->required();
  run->add_flag("--cohort", run_flags.cohort, "fixed-size cohort sampling");
  run->add_option("--cohort-c", run_flags.cohort_c, "cohort slack constant c")
      ->capture_default_str();
  run->add_option("--out", run_flags.out, "write JSON here instead of stdout");

  HhFlags hh_flags;
  CLI::App* hh = app.add_subcommand("hh", "TrieHH++ heavy hitters over strings");
  hh_flags.privacy.Register(hh);
  hh->add_option("--input", hh_flags.input, "one item per line")
      ->check(CLI::ExistingFile);
  hh->add_option("--corpus", hh_flags.corpus, "text file; every word is an item")
      ->check(CLI::ExistingFile);
  hh->add_option("--alphabet", hh_flags.alphabet, "item alphabet (default a-z)");
  hh->add_option("--beta", hh_flags.beta, "alphabet size");
  hh->add_option("--L", hh_flags.levels, "trie depth")->capture_default_str();
  hh->add_option("--mode", hh_flags.mode, "restricted | unrestricted")
      ->check(CLI::IsMember({"restricted", "unrestricted"}))
      ->capture_default_str();
  hh->add_option("--seed", hh_flags.seed, "random seed")->required();
  hh->add_option("--out", hh_flags.out, "write JSON here instead of stdout");

  QuantileFlags q_flags;
  CLI::App* quantile = app.add_subcommand("quantile", "private quantile of values in [0, 1]");
  quantile->set_help_flag("--help", "Print this help message and exit");  // frees --h
  q_flags.privacy.Register(quantile);
  quantile->add_option("--method", q_flags.method, "search | trie")
      ->check(CLI::IsMember({"search", "trie"}))
      ->capture_default_str();
  quantile->add_option("--phi", q_flags.phi, "target quantile")->capture_default_str();
  quantile->add_option("--h", q_flags.h, "binary search rounds")->capture_default_str();
  quantile->add_option("--L", q_flags.levels, "hierarchy depth")->capture_default_str();
  quantile->add_option("--beta", q_flags.beta, "hierarchy fan-out")->capture_default_str();
  quantile->add_option("--n", q_flags.n, "clients with uniform values when no --input")
      ->capture_default_str();
  quantile->add_option("--input", q_flags.input, "newline-delimited values in [0, 1]")
      ->check(CLI::ExistingFile);
  quantile->add_option("--seed", q_flags.seed, "random seed")->required();
  quantile->add_option("--out", q_flags.out, "write JSON here instead of stdout");

  VerifyFlags v_flags;
  CLI::App* verify = app.add_subcommand(
      "verify", "exact hockey-stick delta of n copies of one item vs its neighbor");
  verify->add_option("--n", v_flags.n, "dataset size (<= 20)")->capture_default_str();
  verify->add_option("--p-s", v_flags.p_s, "sampling probability")->capture_default_str();
  verify->add_option("--tau", v_flags.tau, "threshold")->capture_default_str();
  verify->add_option("--eps-grid", v_flags.eps_grid, "comma-separated epsilons")
      ->delimiter(',');
  verify->add_option("--out", v_flags.out, "write CSV here instead of stdout");

  ExperimentFlags e_flags;
  CLI::App* experiment = app.add_subcommand("experiment", "accuracy sweep from a JSON config");
  experiment->add_option("--config", e_flags.config, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  experiment->add_option("--out-dir", e_flags.out_dir,
                         std::string("output directory (default $") + kOutDirEnv +
                             " or .)");
  experiment->add_option("--seed", e_flags.seed, "base seed")->required();
  experiment->add_option("--threads", e_flags.threads, "worker threads (0 = all cores)");

  GenFlags g_flags;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--kind", g_flags.kind, "binomial | geometric | uniform")
      ->check(CLI::IsMember({"binomial", "geometric", "uniform"}))
      ->capture_default_str();
  gen->add_option("--n", g_flags.n, "number of clients")->capture_default_str();
  gen->add_option("--B", g_flags.num_buckets, "number of buckets")->capture_default_str();
  gen->add_option("--seed", g_flags.seed, "random seed")->required();
  gen->add_option("--out", g_flags.out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (calibrate->parsed()) return RunCalibrate(calibrate_flags, calibrate_out, out, err);
    if (run->parsed()) return RunRun(run_flags, out, err);
    if (hh->parsed()) return RunHh(hh_flags, out, err);
    if (quantile->parsed()) return RunQuantile(q_flags, out, err);
    if (verify->parsed()) return RunVerify(v_flags, out, err);
    if (experiment->parsed()) return RunExperimentCommand(e_flags, out, err);
    if (gen->parsed()) return RunGen(g_flags, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

inline int Dispatch(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  std::vector<const char*> argv{"sampthresh"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sampthresh::cli

#endif  // SAMPTHRESH_TOOLS_CLI_H_
