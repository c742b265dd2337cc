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
// Orbit combinatorics at convergent denominators: gap spectra, Ostrowski
// digits, orbit counts in arcs and the Fibonacci-weighted subinterval counts
// used for the tau = 1 Cantor construction.

#ifndef DIRICHLET_COUNTING_H_
#define DIRICHLET_COUNTING_H_

#include <vector>

#include "dirichlet/arc_set.h"
#include "dirichlet/continued_fraction.h"

namespace dirichlet {

// Largest orbit length the exhaustive scans accept.
inline constexpr int64_t kMaxOrbitScan = int64_t{1} << 24;

struct GapSpectrum {
  int k = 0;
  Enclosure short_gap;  // ||q_{k-1} theta||
  Enclosure long_gap;   // ||q_{k-1} theta|| + ||q_k theta||
  int64_t short_count = 0;
  int64_t long_count = 0;
  // Gap after each orbit point in circle order, starting from the point
  // nearest to 0 on the right; `order` holds the orbit indices.
  std::vector<int64_t> order;
  std::vector<Enclosure> gaps;
  // Neighbor of i theta is (i - q_{k-1}) theta or (i + q_k - q_{k-1}) theta,
  // to the right for even k and to the left for odd k.
  bool pairing_ok = true;
};

// Points i theta, 1 <= i <= q_k. Throws kUndecidable if the enclosures
// cannot be sorted or a gap matches neither admissible length.
GapSpectrum ThreeDistance(const ConvergentTable& table, int k);

struct OstrowskiRep {
  BigInt n;
  // digits[j] = c_{j+1}, the multiplier of q_j.
  std::vector<BigInt> digits;

  // 0 <= c_1 < a_1, 0 <= c_{j+1} <= a_{j+1}, c_j = 0 when c_{j+1} = a_{j+1},
  // and the digits sum back to n.
  bool Valid(const ConvergentTable& table) const;
};

// Greedy expansion from the largest q_j <= n; needs 1 <= n < q_K.
OstrowskiRep Ostrowski(const ConvergentTable& table, const BigInt& n);

// Number of digit tuples (c_{k+1}, ..., c_{k+len}) that obey the Ostrowski
// rules inside the window and c_{k+j} <= upper[j-1].
BigInt OstrowskiCount(const ConvergentTable& table, int k,
                      const std::vector<BigInt>& upper);

// Fibonacci numbers u_0 = 0, u_1 = 1.
BigInt Fibonacci(int n);

struct OrbitCount {
  BigInt count;
  Rational expected;  // q_k * measure
  Rational variation; // 2 per component, 0 for the circle
  bool within_bound = true;  // |count - expected| <= variation
};

// Number of i in [1, q_k] with i theta in `set`. Throws kUndecidable if an
// orbit enclosure straddles an endpoint.
OrbitCount CountOrbit(const ConvergentTable& table, int k, const ArcSet& set);

struct SubintervalBound {
  int pattern = 1;     // 1: ones after a_{k+1}; 2: a_{k+2} = 2 then ones
  BigInt digit_count;  // u_l r~ + u_{l+1}, or u_{l+1} (r~ + 1)
  Enclosure bound;     // (q_{k+l}/q_k) sqrt(q_k/q_{k+1}), q_{k+2} for pattern 2
  // digit_count >= bound, certified. The square-root estimate of the radius
  // multiplier fails for a_{k+1} = 1, so this can be false there.
  bool count_meets_bound = false;
};

// Lower bound on the number of level k+l intervals inside one level k
// interval of the tau = 1 construction. Needs k, k+l in Lambda, no index in
// between in Lambda, and one of the two quotient patterns; else
// kInvalidArgument.
SubintervalBound SubintervalCountBound(const ConvergentTable& table, int k, int l);

struct LegendreHit {
  BigInt n;
  int index = 0;  // n / gcd(n, p) = q_index, p the nearest integer to n theta
  bool is_convergent = false;  // n itself is q_index
};

// n <= N with ||n theta|| < 1/(2n). The reduced denominator of each hit must
// be a convergent denominator, otherwise kInvariantViolation. Multiples of a
// q_j pass too when a_{j+1} is large.
std::vector<LegendreHit> LegendreScan(const ConvergentTable& table, const BigInt& N);

}  // namespace dirichlet

#endif  // DIRICHLET_COUNTING_H_
