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

#ifndef SAMPTHRESH_RANDOM_H_
#define SAMPTHRESH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace sampthresh {

// All randomness in the library flows from 64-bit seeds through this engine.
// Results are reproducible for a fixed seed within one standard library
// implementation; std:: distributions are not portable across vendors.
using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to decorrelate seeds that differ in few bits.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for the `index`-th independent stream under `base`:
// base XOR Mix64(index). Levels of a trie, repetitions of an experiment and
// rounds of a binary search all use this.
constexpr std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index) {
  return base ^ Mix64(index);
}

// Child seed for a named stream, e.g. "sample" vs "noise". The tag is hashed
// with FNV-1a so that distinct tags give distinct streams.
constexpr std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return base ^ Mix64(h);
}

inline Rng MakeRng(std::uint64_t seed) { return Rng(Mix64(seed)); }

}  // namespace sampthresh

#endif  // SAMPTHRESH_RANDOM_H_
