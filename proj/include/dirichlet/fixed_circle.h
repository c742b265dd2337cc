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

// Fixed-point evaluation of arcs on the circle Z / 2^90.
//
// Arc endpoints are written as affine forms alpha * theta + beta + rho, with
// small integers alpha, beta and a real offset rho known only through a grid
// bracket [lo, hi]. Forms that differ only in beta round to grid points that
// agree mod 2^90, which is what makes exact inclusions between the
// brute-force level sets and the structural constructions decidable.

#ifndef DIRICHLET_FIXED_CIRCLE_H_
#define DIRICHLET_FIXED_CIRCLE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirichlet/arc_set.h"
#include "dirichlet/continued_fraction.h"
#include "dirichlet/enclosure.h"
#include "dirichlet/interval_algebra.h"

namespace dirichlet {

using GridInt = __int128;
using GridSet = LinearSegments<GridInt>;

// Exponent tau = u / v > 0.
class Tau {
 public:
  enum class Regime { kSub, kOne, kSuper };

  explicit Tau(const Rational& value);
  // "u/v", "u" or a decimal.
  static Tau Parse(const std::string& text);

  const Rational& value() const { return value_; }
  unsigned long num() const { return u_; }
  unsigned long den() const { return v_; }
  Regime regime() const;
  std::string ToString() const { return dirichlet::ToString(value_); }

 private:
  Rational value_;
  unsigned long u_ = 1;
  unsigned long v_ = 1;
};

// Grid bracket of a real quantity, in units of 2^-90.
struct GridBracket {
  GridInt lo = 0;
  GridInt hi = 0;
};

GridBracket operator+(const GridBracket& a, const GridBracket& b);
GridBracket operator-(const GridBracket& a);

struct Form {
  int64_t alpha = 0;
  int64_t beta = 0;
  GridBracket rho;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a);
Form operator*(int64_t c, const Form& a);

class FixedCircle {
 public:
  static constexpr int kBits = 90;
  // Largest |alpha| or |beta| accepted in a form.
  static constexpr int64_t kMaxCoefficient = int64_t{1} << 30;

  // The table must enclose theta to width 2^-94 or better; the circle keeps
  // a pointer to it.
  FixedCircle(const ConvergentTable& table, const Tau& tau);

  static GridInt Modulus() { return GridInt(1) << kBits; }

  const ConvergentTable& table() const { return *table_; }
  const Tau& tau() const { return tau_; }

  // Bracket of an enclosed real quantity.
  static GridBracket FromEnclosure(const Enclosure& e);
  // Bracket of n^-tau; cached, so equal n always give equal brackets.
  GridBracket Radius(const BigInt& n) const;
  // True when n^-tau is certainly at least 1/2.
  bool RadiusAtLeastHalf(const BigInt& n) const;

  // The point i theta.
  static Form Orbit(int64_t i);
  // The signed displacement q_j theta - p_j. Exact form when q_j is small
  // enough, otherwise an opaque bracket.
  Form Displacement(int j) const;
  // |q_j theta - p_j| as an offset: (-1)^j times the displacement.
  Form NormForm(int j) const { return ConvergentTable::Sign(j) * Displacement(j); }
  // The same quantity as an opaque bracket.
  GridBracket Norm(int j) const;
  static Form Offset(const GridBracket& b) { return {0, 0, b}; }

  GridInt Lower(const Form& f) const;
  GridInt Upper(const Form& f) const;

  // Open arc from `left` to `right`. Inner takes (Upper(left), Lower(right)),
  // Outer takes (Lower(left), Upper(right)). Length >= the modulus gives the
  // full circle, length <= 0 the empty set.
  GridSet ArcOf(const Form& left, const Form& right, Rounding mode) const;
  // Arc (c - left, c + right) for even k and its mirror image
  // (c - right, c + left) for odd k. Magnitudes are positive offsets.
  GridSet OrientedArc(int k, const Form& center, const Form& left,
                      const Form& right, Rounding mode) const;
  // Open arc between unreduced grid values lo < hi.
  GridSet RawArc(GridInt lo, GridInt hi) const;
  GridSet Ball(int64_t i, const GridBracket& radius, Rounding mode) const;

  // Union of the given arcs given as unsorted segment lists.
  static GridSet UniteSegments(std::vector<std::pair<GridInt, GridInt>> segs,
                               bool zero_in);

  // G_n = union of B(i theta, n^-tau), 1 <= i <= n. Radii of 1/2 or more
  // are allowed here (the open ball is then the circle, possibly minus the
  // antipode).
  GridSet Gn(int64_t n, Rounding mode) const;
  // F_k = intersection of G_n over q_k < n <= q_{k+1}. Throws
  // kOracleInfeasible when q_{k+1} exceeds `budget`.
  GridSet Fk(int k, Rounding mode, int64_t budget) const;

  static ArcSet ToArcSet(const GridSet& g);
  // Grid image of an exact rational point, rounded down.
  static GridInt FloorPoint(const Rational& y);

 private:
  GridInt Frac(GridInt x) const;

  const ConvergentTable* table_;
  Tau tau_;
  GridInt theta_lo_;
  GridInt theta_hi_;
  mutable std::map<BigInt, GridBracket> radius_cache_;
};

// Conversions between GridInt and BigInt.
GridInt ToGrid(const BigInt& z);
BigInt FromGrid(GridInt x);

}  // namespace dirichlet

#endif  // DIRICHLET_FIXED_CIRCLE_H_
