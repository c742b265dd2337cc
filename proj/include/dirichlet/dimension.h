// Copyright 2026 The Dirichlet Level Sets Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Subsequence selection, the dimension formulas as finite-depth series, the
// closed-form bounds in the irrationality exponent, and the generic Cantor
// set estimators they rest on.
//
// Every liminf is reported as the running minimum of the partial values; no
// extrapolation is attempted.

#ifndef DIRICHLET_DIMENSION_H_
#define DIRICHLET_DIMENSION_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirichlet/continued_fraction.h"
#include "dirichlet/enclosure.h"
#include "dirichlet/fixed_circle.h"

namespace dirichlet {

struct Selection {
  Rational tau;
  std::vector<int> indices;  // selected k, increasing
  // log(q_k ||q_k||^tau) for tau < 1, log(q_k^tau ||q_k||) for tau > 1, one
  // entry per selected k.
  std::vector<Enclosure> log_condition;
  int last_k = 0;  // every 1 <= k <= last_k was decided
};

// Maximal selection among 1 <= k <= max_k (default depth - 3): q_k ||q_k||^tau
// < 1 for tau < 1, q_k^tau ||q_k|| < 2 for tau > 1, decided by exact integer
// powers. tau = 1 is rejected; a straddling enclosure throws kUndecidable.
Selection SelectSubsequence(const ConvergentTable& table, const Tau& tau,
                            int max_k = -1);

enum class SeriesKind {
  kSelectionSub,
  kSelectionSuper,
  kExponentSub,
  kExponentSuper,
  kTauOneLower,
  kCoverRatio,
  kFalconerLower,
  kFalconerUpper,
};

const char* SeriesKindName(SeriesKind kind);

struct DimensionSeries {
  SeriesKind kind = SeriesKind::kSelectionSub;
  std::vector<int> index;  // k_i, or i for the generic estimators
  std::vector<Enclosure> values;
  std::vector<Enclosure> running_min;
  std::string note;  // set when the formula's hypothesis is not met

  bool empty() const { return values.empty(); }
  const Enclosure& estimate() const { return running_min.back(); }
  void Push(int i, const Enclosure& v);
};

// Partial values of the main dimension formula over the selection. Sub:
// log(n_i^(1/tau+1) prod_{j<i} n_j^(1/tau) ||n_j||) / log(n_i / ||n_i||);
// Super: -log(prod_{j<i} n_j ||n_j||^(1/tau)) / log(n_i / ||n_i||).
// Needs at least two selected indices (kInvalidArgument).
DimensionSeries SelectionSeries(const ConvergentTable& table, const Tau& tau,
                               const Selection& selection);

// w_j with 2 q_{k_j+1} = q_{k_j}^{w_j} (sub) or 2^{w+1} q_{k_j+1} =
// q_{k_j}^{w_j} (super, w = exponent).
std::vector<Enclosure> ExponentSequence(const ConvergentTable& table,
                                        const Selection& selection,
                                        std::optional<Rational> exponent);
// S_i = (S_{i-1} + 1) / w_i with S_0 = 0.
std::vector<Enclosure> TelescopedSums(const std::vector<Enclosure>& w);

// The same limit written through the w_j. Sub: (1/tau+1)/(w_i+1) -
// sum_{j<i} (w_j - 1/tau)/(w_i+1) log q_{k_j}/log q_{k_i}; super:
// sum_{j<i} (w_j/tau - 1)/(w_i+1) log q_{k_j}/log q_{k_i}. `exponent` is the
// w of the super normalization.
DimensionSeries ExponentSeries(const ConvergentTable& table, const Tau& tau,
                               const Selection& selection,
                               const Rational& exponent);

// Bounds in w = w(theta); nullopt stands for w = infinity. Needs
// 1/w <= tau <= w. w = 1 and tau = 1 gives (1/2, 1).
std::pair<Rational, Rational> ExponentBounds(const std::optional<Rational>& w,
                                             const Rational& tau);

struct OptimizedBound {
  Enclosure value;      // 1 / (2 tau (tau + sqrt(tau^2 - 1)))
  Enclosure optimal_w;  // tau + sqrt(tau^2 - 1)
  bool below_half_tau_squared = false;  // value < 1/(2 tau^2), certified
};
OptimizedBound OptimizedUpper(const Rational& tau);

// log(m_1 ... m_{i-1}) / -log(m_i eps_i) for i >= 2. eps must be positive,
// decreasing and m_i eps_i < 1.
DimensionSeries FalconerLower(const std::vector<BigInt>& m,
                              const std::vector<Rational>& eps);
// log l_i / -log delta_i with 0 < delta_i < 1.
DimensionSeries FalconerUpper(const std::vector<BigInt>& l,
                              const std::vector<Rational>& delta);

// Lower series at tau = 1 over the indices k_i of Lambda up to max_k:
// (log q_{k_i} + sum_{1<=k<k_i, a_{k+1}=1} log(q_{k+1}/q_k)) /
// (log q_{k_i} + log q_{k_{i+1}} - sum_{k_i<=k<k_{i+1}, a_{k+1}=1} log(q_{k+1}/q_k)).
DimensionSeries TauOneLowerSeries(const ConvergentTable& table, int max_k = -1);

// log q_k / (log q_k + log q_{k+1}) for 1 <= k <= max_k, the cover estimate
// at tau = 1 once the factorial terms are dropped.
DimensionSeries CoverRatioSeries(const ConvergentTable& table, int max_k = -1);

struct SweepPoint {
  Rational tau;
  std::string route;  // "sub", "super", "tau-one" or "hypothesis-not-met"
  std::optional<Enclosure> estimate;
  // Against the previous grid point on the same side of 1.
  std::optional<Enclosure> increment;
  std::optional<Enclosure> modulus;
  bool monotone = true;
  bool within_modulus = true;
};

// Finite-depth estimates over a grid. Continuity moduli: (t - s)/(s(1 - t^2))
// below 1 and (t - s) w/(s t (s^2 - 1)) above 1, for consecutive s < t; the
// check allows twice the modulus and is advisory.
std::vector<SweepPoint> TauSweep(const ConvergentTable& table,
                                 const std::vector<Rational>& grid,
                                 const Rational& exponent, int max_k = -1);

}  // namespace dirichlet

#endif  // DIRICHLET_DIMENSION_H_
