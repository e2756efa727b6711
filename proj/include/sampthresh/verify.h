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

#ifndef SAMPTHRESH_VERIFY_H_
#define SAMPTHRESH_VERIFY_H_

// Pairs the exhaustive oracle with the analytic bound: for each epsilon the
// observed hockey-stick delta of two neighboring datasets is checked against
// DeltaBoundExact(epsilon, p_s, tau).

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "sampthresh/calibration.h"
#include "sampthresh/oracles.h"

namespace sampthresh {

inline std::vector<VerifyRow> DpVerify(std::span<const BucketId> d,
                                       std::span<const BucketId> d_prime,
                                       double p_s, Count tau,
                                       std::span<const double> epsilons) {
  std::vector<VerifyRow> rows = ObservedDeltas(d, d_prime, p_s, tau, epsilons);
  for (VerifyRow& row : rows) {
    row.bound_applicable =
        row.epsilon > 0.0 && p_s <= -std::expm1(-row.epsilon);
    if (row.bound_applicable) {
      row.bound_delta = DeltaBoundExact(row.epsilon, p_s, tau).delta;
      // Relative slack for the 2^n-term summation.
      row.certified = row.observed_delta <= row.bound_delta * (1.0 + 1e-9) +
                                                1e-15;
    } else {
      row.bound_delta = std::numeric_limits<double>::quiet_NaN();
      row.certified = false;
    }
  }
  return rows;
}

// The canonical neighbor pair used by the CLI: D holds n copies of bucket 0,
// D' replaces one of them with bucket 1.
struct NeighborPair {
  std::vector<BucketId> d;
  std::vector<BucketId> d_prime;
};

inline NeighborPair RepeatedItemPair(std::size_t n) {
  if (n == 0) throw InvalidInputError("neighbor pair needs n >= 1");
  NeighborPair pair;
  pair.d.assign(n, 0);
  pair.d_prime.assign(n, 0);
  pair.d_prime.back() = 1;
  return pair;
}

}  // namespace sampthresh

#endif  // SAMPTHRESH_VERIFY_H_
