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

// Quotient-dependent radii and interval families for the exponent tau = 1.
//
// Index conventions: R(k) is r_{k+1} and RTilde(k) is the adjusted
// r~_{k+1}, both functions of a_{k+1} (and a_{k+2}). Interval families are
// written for even k; odd k uses the mirror image.

#ifndef DIRICHLET_TAU_ONE_H_
#define DIRICHLET_TAU_ONE_H_

#include <optional>

#include "dirichlet/arc_set.h"
#include "dirichlet/continued_fraction.h"
#include "dirichlet/fixed_circle.h"

namespace dirichlet {

// r = floor(sqrt(4a + 5)) - 3 for a != 2, and 1 for a = 2.
BigInt RadiusMultiplier(const BigInt& a);
// r + 1 = 2 when a = 4 and next >= 2, otherwise r.
BigInt AdjustedRadiusMultiplier(const BigInt& a, const BigInt& next);

class TauOne {
 public:
  // Circle and table must outlive this object; the circle's tau must be 1.
  explicit TauOne(const FixedCircle& circle);

  const ConvergentTable& table() const { return circle_->table(); }

  BigInt R(int k) const;       // needs k + 1 <= depth
  BigInt RTilde(int k) const;  // needs k + 2 <= depth
  // a_{k+1} >= 3 or a_{k+2} = 2.
  bool InLambda(int k) const;

  // Union over i <= q_k of (i theta - ||q_k||, i theta + r ||q_k|| +
  // ||q_{k+1}||), inner rounded. With `adjusted`, r~ replaces r and i runs up
  // to q_k when a_k = 1, else up to (r~_k + 1) q_{k-1}.
  GridSet FkInnerGrid(int k, bool adjusted) const;
  ArcSet FkInner(int k, bool adjusted = false) const;

  // The three-case family F~_k, inner rounded.
  GridSet FTildeGrid(int k) const;
  ArcSet FTilde(int k) const;
  // The four-case family D_k built from F~_k and F~_{k+1}.
  GridSet DGrid(int k) const;
  ArcSet D(int k) const;

  // ||q_{k-1} theta|| / 7.
  Enclosure GapBound(int k) const;
  // Smallest gap of D_k (nullopt when D_k is the circle).
  std::optional<Rational> MinGap(int k) const;
  // min_gap(D_k) >= ||q_{k-1}|| / 7 - 2^-80 for k in Lambda.
  bool GapCheck(int k) const;

 private:
  int64_t Index(const BigInt& n) const;

  const FixedCircle* circle_;
};

}  // namespace dirichlet

#endif  // DIRICHLET_TAU_ONE_H_
