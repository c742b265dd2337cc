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

// Level sets F_k of the uniform approximation problem: brute-force oracle,
// certified classification, and the structural inner/outer constructions.
//
// Notation: r = q_{k+1}^-tau, ||q|| = |q_k theta - p_k|. Constructions are
// written for even k and mirrored for odd k.

#ifndef DIRICHLET_LEVEL_SET_H_
#define DIRICHLET_LEVEL_SET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirichlet/arc_set.h"
#include "dirichlet/continued_fraction.h"
#include "dirichlet/fixed_circle.h"
#include "dirichlet/tau_one.h"

namespace dirichlet {

enum class Classification { kFullCircle, kExactBallUnion, kSandwich };
const char* ClassificationName(Classification c);

struct LevelSet {
  int k = 0;
  Classification classification = Classification::kSandwich;
  ArcSet inner;
  ArcSet outer;
  std::vector<std::string> certificates;
  // Set when balls of radius r are not certified pairwise disjoint.
  bool uncertified = false;
  // (c_k + 2) q_k, the ball count of the unproved outer bound (tau > 1).
  std::optional<BigInt> stated_outer_count;
  // Number of balls of the outer set actually built (tau > 1).
  std::optional<BigInt> outer_count;
};

enum class Membership { kIn, kOut, kUndecided };
const char* MembershipName(Membership m);

class LevelSetBuilder {
 public:
  // Largest number of arcs a construction may materialize.
  static constexpr int64_t kMaxArcs = int64_t{1} << 20;
  // Largest q_{k+1} for the exact chain construction.
  static constexpr int64_t kChainBudget = int64_t{1} << 22;

  // The table must outlive the builder.
  LevelSetBuilder(const ConvergentTable& table, const Tau& tau);

  const ConvergentTable& table() const { return *table_; }
  const Tau& tau() const { return tau_; }
  const FixedCircle& circle() const { return circle_; }

  // Enclosure of n^-tau.
  Enclosure Radius(const BigInt& n) const;

  // Public G_n: rejects radii >= 1/2.
  ArcSet Gn(const BigInt& n, Rounding mode) const;
  // Brute-force F_k; kOracleInfeasible when q_{k+1} > budget.
  ArcSet FkOracle(int k, Rounding mode, int64_t budget) const;

  // Full-circle certificates. Each returns true when certified, false when
  // certainly not, and throws kUndecidable inside the margin.
  bool GapSumCover(int k) const;         // 2 r > ||q_{k-1}|| + ||q_k||
  bool UnitQuotient(int k) const;        // tau = 1 and a_{k+1} = 1
  bool ThreeDistanceCover(int k) const;  // every G_n, q_k < n <= q_{k+1}, is T
  // r + q_k^-tau <= ||q_k|| (tau > 1).
  bool SeparatedBalls(int k) const;
  // 2 r < ||q_k||.
  bool DisjointBalls(int k) const;

  // FullCircle, ExactBallUnion (tau > 1) or Sandwich; needs k + 2 < depth.
  Classification Classify(int k) const;

  // C_tau = tau^(1/(tau+1)) + tau^(-tau/(tau+1)).
  Enclosure CTau() const;
  // floor((||q_k|| q_k^tau)^(-1/(tau+1))), exact.
  BigInt Ck(int k) const;

  // Exact chain radius: min over q_k < n <= q_{k+1} of
  // floor((n - i)/q_k) ||q_k|| + n^-tau.
  Enclosure ChainRadius(int k, const BigInt& i) const;
  // Its lower bound min over 1 <= c <= a_{k+1}+1 of
  // (c-1)||q_k|| + (c q_k + i - 1)^-tau.
  Enclosure ChainRadiusBound(int k, const BigInt& i) const;

  // tau <= 1 constructions.
  ArcSet ChainInner(int k) const;
  // Right radius (C_tau Y^(tau/(tau+1)) - 2)||q_k||, Y = 1/(q_k^tau ||q_k||).
  Enclosure ChainBoundRightRadius(int k) const;
  ArcSet ChainBoundInner(int k) const;
  ArcSet ChainOuter(int k) const;
  // The 1/4 interval family; nullopt unless its right radius is certified
  // below the chain-bound right radius.
  std::optional<ArcSet> QuarterInner(int k) const;

  // Balls B(i theta, r), 1 <= i <= count.
  ArcSet BallUnion(int k, const BigInt& count, Rounding mode) const;
  // tau > 1: largest certified c <= c_k of the ball chain; inner count is
  // max(c, 1) q_k.
  BigInt BallChainInnerCount(int k) const;
  // Proved outer ball count max(q_k + n0 - 1, 2 q_k), capped at q_{k+1},
  // where n0 is the least n with n^-tau + r <= ||q_k||.
  BigInt BallCountOuter(int k) const;

  LevelSet Build(int k) const;

  // Per-k membership of y in F_k for k_lo <= k <= k_hi.
  std::vector<Membership> Trace(const Rational& y, int k_lo, int k_hi) const;

 private:
  void CheckK(int k) const;
  int64_t Count(const BigInt& n) const;

  const ConvergentTable* table_;
  Tau tau_;
  FixedCircle circle_;
};

}  // namespace dirichlet

#endif  // DIRICHLET_LEVEL_SET_H_
