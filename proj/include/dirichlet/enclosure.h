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

// Exact rationals and outward-rounded rational enclosures.
//
// Every irrational quantity in the library (theta, ||q_k theta||, n^-tau,
// logarithms) is carried as a closed interval [lo, hi] with rational ends.
// Operations below keep the true value inside the result.

#ifndef DIRICHLET_ENCLOSURE_H_
#define DIRICHLET_ENCLOSURE_H_

#include <gmpxx.h>

#include <string>

namespace dirichlet {

using BigInt = mpz_class;
using Rational = mpq_class;

// Default working precision (bits, relative) for powers and logarithms.
inline constexpr int kDefaultPrecisionBits = 128;

// "num/den" for rationals (den may be 1), plain decimal for integers.
std::string ToString(const Rational& q);
std::string ToString(const BigInt& z);

// Accepts "u/v", "u" and finite decimals such as "0.75" or "-1.5".
// Throws Error(kInvalidArgument) on anything else or a zero denominator.
Rational ParseRational(const std::string& text);

BigInt Floor(const Rational& q);
BigInt Ceil(const Rational& q);

// floor(log2(q)) for q > 0.
long FloorLog2(const Rational& q);

// floor(x^(1/v)) for x >= 0, v >= 1.
BigInt FloorRoot(const BigInt& x, unsigned long v);

// Smallest t >= 0 with t^v >= x^u (x >= 0, u, v >= 1).
BigInt CeilRationalPower(const BigInt& x, unsigned long u, unsigned long v);

double ToDouble(const Rational& q);

enum class Order3 { kLess, kGreater, kUndecided };

struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure() = default;
  Enclosure(Rational l, Rational h);
  static Enclosure Point(const Rational& q) { return Enclosure(q, q); }

  Rational Width() const { return hi - lo; }
  Rational Mid() const { return (lo + hi) / 2; }
  bool Contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool Overlaps(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
  bool IsPoint() const { return lo == hi; }

  std::string ToString() const;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& c, const Enclosure& a);
Enclosure operator+(const Enclosure& a, const Rational& c);
// Requires b bounded away from zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

// Intersection; throws kInvariantViolation if the intervals are disjoint,
// since both were claimed to hold the same value.
Enclosure Intersect(const Enclosure& a, const Enclosure& b);

// Widen to dyadic endpoints carrying about `bits` significant bits. Used to
// keep operand sizes bounded before powers and logs.
Enclosure Coarsen(const Enclosure& a, int bits);

// Certified comparison: kLess if a.hi < b.lo, kGreater if a.lo > b.hi.
Order3 Compare(const Enclosure& a, const Enclosure& b);
inline bool CertainlyLess(const Enclosure& a, const Enclosure& b) {
  return a.hi < b.lo;
}
inline bool CertainlyLessEq(const Enclosure& a, const Enclosure& b) {
  return a.hi <= b.lo;
}

// x^e for x > 0 and rational e, via integer v-th roots of scaled integer
// powers. Relative width of the added rounding is below 2^-bits.
Enclosure Power(const Enclosure& x, const Rational& e,
                int bits = kDefaultPrecisionBits);
Enclosure Power(const Rational& x, const Rational& e,
                int bits = kDefaultPrecisionBits);

// Natural logarithm of a positive integer / rational / enclosure, with
// directed rounding (MPFR) converted exactly to rationals.
Enclosure Log(const BigInt& n, int bits = kDefaultPrecisionBits);
Enclosure Log(const Rational& q, int bits = kDefaultPrecisionBits);
Enclosure Log(const Enclosure& x, int bits = kDefaultPrecisionBits);

}  // namespace dirichlet

#endif  // DIRICHLET_ENCLOSURE_H_
