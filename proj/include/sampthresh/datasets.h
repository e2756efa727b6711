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

#ifndef SAMPTHRESH_DATASETS_H_
#define SAMPTHRESH_DATASETS_H_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sampthresh/errors.h"
#include "sampthresh/histogram.h"
#include "sampthresh/random.h"

namespace sampthresh {

// Bucket ~ Binomial(B - 1, 1/2), support exactly [0, B).
inline Dataset GenBinomial(std::size_t n, std::uint64_t num_buckets,
                           std::uint64_t seed) {
  if (num_buckets < 2) throw DomainError("GenBinomial: B must be >= 2");
  Rng rng = MakeRng(seed);
  std::binomial_distribution<std::uint64_t> draw(num_buckets - 1, 0.5);
  std::vector<BucketId> items(n);
  for (auto& item : items) item = draw(rng);
  return Dataset(std::move(items), num_buckets, "binomial");
}

// g ~ Geometric(1/sqrt(B)) on {1, 2, ...}, bucket = min(g, B) - 1. The tail
// beyond B is folded into the last bucket.
inline Dataset GenGeometric(std::size_t n, std::uint64_t num_buckets,
                            std::uint64_t seed) {
  if (num_buckets < 2) throw DomainError("GenGeometric: B must be >= 2");
  Rng rng = MakeRng(seed);
  // std::geometric_distribution counts failures, i.e. g - 1.
  std::geometric_distribution<std::uint64_t> draw(
      1.0 / std::sqrt(static_cast<double>(num_buckets)));
  std::vector<BucketId> items(n);
  for (auto& item : items) item = std::min(draw(rng), num_buckets - 1);
  return Dataset(std::move(items), num_buckets, "geometric");
}

// Values uniform on [0, 1), for quantile experiments.
inline std::vector<double> GenUniformValues(std::size_t n, std::uint64_t seed) {
  Rng rng = MakeRng(seed);
  std::uniform_real_distribution<double> draw(0.0, 1.0);
  std::vector<double> values(n);
  for (auto& v : values) v = draw(rng);
  return values;
}

// 64-bit FNV-1a.
constexpr std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Lowercased maximal runs of ASCII letters. Every other byte, including
// non-ASCII UTF-8 sequences, separates tokens.
inline std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      current.push_back(static_cast<char>(c | 0x20));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

inline BucketId WordBucket(std::string_view word, std::uint64_t num_buckets) {
  return Fnv1a64(word) % num_buckets;
}

struct Corpus {
  Dataset dataset;
  Histogram truth;
  std::size_t token_count = 0;
};

inline Corpus CorpusFromText(std::string_view text, std::uint64_t num_buckets,
                             std::string provenance = "corpus") {
  if (num_buckets == 0) throw DomainError("corpus: B must be positive");
  std::vector<BucketId> items;
  for (const std::string& token : Tokenize(text)) {
    items.push_back(WordBucket(token, num_buckets));
  }
  Corpus out;
  out.token_count = items.size();
  out.dataset = Dataset(std::move(items), num_buckets, std::move(provenance));
  out.truth = TrueHistogram(out.dataset);
  return out;
}

// Reads a text file and maps every word to FNV-1a-64(word) mod B, in file
// order.
inline Corpus IngestCorpus(const std::string& path, std::uint64_t num_buckets) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open corpus file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return CorpusFromText(buffer.str(), num_buckets, "corpus:" + path);
}

// Newline-delimited bucket ids.
inline void WriteDataset(std::ostream& out, const Dataset& dataset) {
  for (BucketId b : dataset.items()) out << b << '\n';
}

inline Dataset ReadDataset(std::istream& in, std::uint64_t num_buckets,
                           const std::string& name = "input") {
  std::vector<BucketId> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(line, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || line.find_first_not_of(" \t\r", pos) != std::string::npos) {
      throw InvalidInputError(name + ":" + std::to_string(line_no) +
                              ": expected a bucket id");
    }
    items.push_back(value);
  }
  return Dataset(std::move(items), num_buckets, name);
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_DATASETS_H_
