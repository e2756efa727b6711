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

#ifndef SAMPTHRESH_CALIBRATION_H_
#define SAMPTHRESH_CALIBRATION_H_

// Closed-form privacy mathematics for the sample-and-threshold histogram:
// the KL-divergence delta bound, the simplified exp(-tau * C_alpha) bound,
// forward and inverse calibration, and the TrieHH threshold / sample-size
// formulas (which go through the Lambert W function).
//
// Everything here is a pure function of its arguments.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "sampthresh/errors.h"

namespace sampthresh {

// A delta value together with its natural logarithm. Bounds such as
// exp(-tau ln tau + tau - 1) at tau = 1000 underflow a double, so the log is
// always the authoritative field and `delta` may legitimately be 0.
struct DeltaBound {
  double delta = 0.0;
  double log_delta = -std::numeric_limits<double>::infinity();

  static DeltaBound FromLog(double log_delta) {
    return DeltaBound{std::exp(log_delta), log_delta};
  }
};

// KL divergence between Bernoulli(q) and Bernoulli(p), in nats. Uses the
// 0 ln 0 = 0 convention at q in {0, 1}.
inline double KlDivergence(double q, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("KlDivergence: p must lie in (0, 1)");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("KlDivergence: q must lie in [0, 1]");
  }
  double d = 0.0;
  if (q > 0.0) d += q * std::log(q / p);
  if (q < 1.0) d += (1.0 - q) * (std::log1p(-q) - std::log1p(-p));
  // Rounding can leave a tiny negative residue at q == p.
  return d < 0.0 ? 0.0 : d;
}

// The critical sampled fraction above which a count becomes privacy
// violating: 1 - exp(-epsilon) (1 - p_s).
inline double QOf(double epsilon, double p_s) {
  if (!(epsilon >= 0.0)) throw DomainError("QOf: epsilon must be >= 0");
  if (!(p_s >= 0.0 && p_s < 1.0)) {
    throw DomainError("QOf: p_s must lie in [0, 1)");
  }
  return 1.0 - std::exp(-epsilon) * (1.0 - p_s);
}

// Tightest delta from the Chernoff argument, exp(-(tau/q) D(q || p_s)).
// Requires p_s <= 1 - exp(-epsilon); otherwise the ratio of output
// probabilities can fall below exp(-epsilon) even at count 0.
inline DeltaBound DeltaBoundExact(double epsilon, double p_s,
                                  std::int64_t tau) {
  if (!(epsilon > 0.0)) {
    throw CalibrationError("DeltaBoundExact: epsilon must be > 0");
  }
  if (tau < 1) throw CalibrationError("DeltaBoundExact: tau must be >= 1");
  if (!(p_s >= 0.0 && p_s < 1.0)) {
    throw CalibrationError("DeltaBoundExact: p_s must lie in [0, 1)");
  }
  const double ceiling = -std::expm1(-epsilon);
  // Allow for the rounding in p_s = alpha * (1 - exp(-epsilon)) at alpha = 1.
  if (p_s > ceiling * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "DeltaBoundExact: requires p_s <= 1 - exp(-epsilon), got p_s = "
        << p_s << " > " << ceiling;
    throw CalibrationError(msg.str());
  }
  if (p_s == 0.0) return DeltaBound{};  // Nothing is ever released.
  const double q = QOf(epsilon, p_s);
  return DeltaBound::FromLog(-(static_cast<double>(tau) / q) *
                             KlDivergence(q, p_s));
}

// C_alpha = ln(1/alpha) - 1/(1 + alpha). Non-positive values (alpha close to
// 1) mean the simplified bound exp(-tau C_alpha) is vacuous.
inline double CAlpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("CAlpha: alpha must lie in (0, 1]");
  }
  return -std::log(alpha) - 1.0 / (1.0 + alpha);
}

// The simplified bound exp(-tau * C_alpha).
inline DeltaBound DeltaBoundSimplified(double alpha, std::int64_t tau) {
  return DeltaBound::FromLog(-static_cast<double>(tau) * CAlpha(alpha));
}

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 1e-8;
  // Fraction of the maximal sampling rate 1 - exp(-epsilon) actually used.
  double alpha = 1.0 / 6.0;
  double p_s = 0.0;
  std::int64_t tau = 1;

  double q() const { return QOf(epsilon, p_s); }
  double c_alpha() const { return CAlpha(alpha); }

  // Throws CalibrationError when the invariants do not hold.
  void Validate() const {
    if (!(epsilon > 0.0)) throw CalibrationError("epsilon must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
      throw CalibrationError("delta must lie in (0, 1)");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw CalibrationError("alpha must lie in (0, 1]");
    }
    if (tau < 1) throw CalibrationError("tau must be >= 1");
    if (!(p_s >= 0.0 && p_s < 1.0)) {
      throw CalibrationError("p_s must lie in [0, 1)");
    }
    if (p_s > -std::expm1(-epsilon) * (1.0 + 1e-12)) {
      throw CalibrationError("p_s must not exceed 1 - exp(-epsilon)");
    }
  }
};

// Sets p_s = alpha (1 - exp(-epsilon)) and tau = ceil(ln(1/delta) / C_alpha).
inline PrivacyParams Calibrate(double epsilon, double delta, double alpha) {
  if (!(epsilon > 0.0)) throw CalibrationError("Calibrate: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw CalibrationError("Calibrate: delta must lie in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw CalibrationError("Calibrate: alpha must lie in (0, 1)");
  }
  const double c = CAlpha(alpha);
  if (!(c > 0.0)) {
    std::ostringstream msg;
    msg << "Calibrate: C_alpha = " << c << " <= 0 at alpha = " << alpha
        << "; the bound exp(-tau C_alpha) is vacuous";
    throw CalibrationError(msg.str());
  }
  PrivacyParams params;
  params.epsilon = epsilon;
  params.delta = delta;
  params.alpha = alpha;
  params.p_s = -alpha * std::expm1(-epsilon);
  const double tau = std::ceil(-std::log(delta) / c);
  params.tau = tau < 1.0 ? 1 : static_cast<std::int64_t>(tau);
  return params;
}

// Inverse of the sampling rule: epsilon = ln(alpha / (alpha - p_s)).
inline double EpsOf(double p_s, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("EpsOf: alpha must lie in (0, 1]");
  }
  if (!(p_s >= 0.0 && p_s < alpha)) {
    throw DomainError("EpsOf: requires 0 <= p_s < alpha");
  }
  return -std::log1p(-p_s / alpha);
}

// Principal branch W0 of the Lambert W function, w e^w = x, x >= -1/e.
// Halley iteration from ln(1 + x) for x >= 0 and from the branch-point
// expansion -1 + sqrt(2 (1 + e x)) for x < 0.
inline double LambertW(double x) {
  constexpr double kInvE = 1.0 / std::numbers::e;
  if (std::isnan(x) || x < -kInvE * (1.0 + 1e-15)) {
    throw DomainError("LambertW: x must be >= -1/e");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  const double branch = 1.0 + std::numbers::e * x;
  if (branch <= 0.0) return -1.0;

  double w;
  if (x >= 0.0) {
    w = std::log1p(x);
    // ln(1+x) overshoots badly for large x; ln x - ln ln x is closer.
    if (x > 3.0) {
      const double l = std::log(x);
      w = l - std::log(l);
    }
  } else {
    const double p = std::sqrt(2.0 * branch);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }

  constexpr int kMaxIterations = 64;
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

// exp(-tau ln tau + tau - 1): probability that a prefix held by at most
// n/m clients reaches the threshold tau in a sample of m.
inline DeltaBound TrieHHDelta(double tau) {
  if (!(tau > 1.0)) throw DomainError("TrieHHDelta: tau must be > 1");
  return DeltaBound::FromLog(-tau * std::log(tau) + tau - 1.0);
}

// Smallest integer tau with TrieHHDelta(tau) <= exp(log_delta), from
// tau = e exp(W((1/e) ln(1/(e delta)))).
inline std::int64_t TrieHHTauFromLog(double log_delta) {
  if (!(log_delta < -1.0)) {
    throw DomainError("TrieHHTau: delta must be < 1/e");
  }
  const double arg = (-log_delta - 1.0) / std::numbers::e;
  const double real_tau = std::numbers::e * std::exp(LambertW(arg));
  auto tau = static_cast<std::int64_t>(std::ceil(real_tau));
  if (tau < 2) tau = 2;
  // Guard against the real root landing a hair above an integer that
  // already satisfies the bound.
  while (tau > 2 && TrieHHDelta(static_cast<double>(tau - 1)).log_delta <=
                        log_delta) {
    --tau;
  }
  while (TrieHHDelta(static_cast<double>(tau)).log_delta > log_delta) ++tau;
  return tau;
}

inline std::int64_t TrieHHTau(double delta) {
  if (!(delta > 0.0)) throw DomainError("TrieHHTau: delta must be > 0");
  return TrieHHTauFromLog(std::log(delta));
}

// Per-level sample size for TrieHH at a target epsilon: m = 9 eps n /
// (10 L tau). The bound epsilon <= 10 L m tau / (9 n) it inverts is only
// derived for m <= n / (10 tau); `within_region` reports whether that holds.
struct TrieHHSampleSize {
  double fraction = 0.0;       // m / n before rounding
  double expected_size = 0.0;  // fraction * n
  std::uint64_t size = 0;      // floor(expected_size)
  double epsilon_bound = 0.0;  // 10 L size tau / (9 n)
  bool within_region = true;
};

inline TrieHHSampleSize TrieHHSampleSizeFor(double epsilon, std::int64_t levels,
                                            std::int64_t tau, double n) {
  if (!(epsilon >= 0.0)) {
    throw DomainError("TrieHHSampleSize: epsilon must be >= 0");
  }
  if (levels < 1 || tau < 1 || !(n > 0.0)) {
    throw DomainError("TrieHHSampleSize: L, tau and n must be positive");
  }
  TrieHHSampleSize out;
  out.fraction = 9.0 * epsilon / (10.0 * static_cast<double>(levels) *
                                  static_cast<double>(tau));
  out.expected_size = out.fraction * n;
  out.size = static_cast<std::uint64_t>(std::floor(out.expected_size));
  out.epsilon_bound = 10.0 * static_cast<double>(levels) *
                      static_cast<double>(out.size) *
                      static_cast<double>(tau) / (9.0 * n);
  out.within_region = out.expected_size <= n / (10.0 * static_cast<double>(tau));
  return out;
}

// The original TrieHH sampling rule (1/tau)(1 - exp(-epsilon/L)), as a
// fraction of n.
inline double TrieHHReferenceFraction(double epsilon, std::int64_t levels,
                                      std::int64_t tau) {
  return -std::expm1(-epsilon / static_cast<double>(levels)) /
         static_cast<double>(tau);
}

// Parameters of the original TrieHH protocol: m = gamma sqrt(n) clients per
// level. gamma here is a sample-size factor, unrelated to relative error.
struct TrieHHLegacyParams {
  double n = 0.0;
  double gamma = 0.0;
  std::int64_t levels = 1;
  std::int64_t tau = 1;
  double m = 0.0;

  static TrieHHLegacyParams Create(double n, double gamma, std::int64_t levels,
                                   std::int64_t tau) {
    if (!(n > 0.0) || !(gamma > 0.0)) {
      throw DomainError("TrieHHLegacyParams: n and gamma must be positive");
    }
    if (levels < 1) throw DomainError("TrieHHLegacyParams: L must be >= 1");
    TrieHHLegacyParams p{n, gamma, levels, tau, gamma * std::sqrt(n)};
    if (p.m > n) throw DomainError("TrieHHLegacyParams: m = gamma sqrt(n) > n");
    return p;
  }

  // Epsilon of the restated TrieHH guarantee, L ln(1 + 1/(sqrt(n)/(gamma tau)
  // - 1)), and its simplification 10 L m tau / (9 n).
  double Epsilon() const {
    const double r = std::sqrt(n) / (gamma * static_cast<double>(tau));
    return static_cast<double>(levels) * std::log1p(1.0 / (r - 1.0));
  }
  double EpsilonSimplified() const {
    return 10.0 * static_cast<double>(levels) * m * static_cast<double>(tau) /
           (9.0 * n);
  }
};

}  // namespace sampthresh

#endif  // SAMPTHRESH_CALIBRATION_H_
