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

#include "dirichlet/enclosure.h"

#include <gtest/gtest.h>

#include <random>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

Rational Pow(const Rational& x, unsigned long n) {
  Rational r = 1;
  for (unsigned long i = 0; i < n; ++i) r *= x;
  return r;
}

TEST(ParseRationalTest, Forms) {
  EXPECT_EQ(ParseRational("3/4"), Rational(3, 4));
  EXPECT_EQ(ParseRational("6/8"), Rational(3, 4));
  EXPECT_EQ(ParseRational("2"), Rational(2));
  EXPECT_EQ(ParseRational("0.75"), Rational(3, 4));
  EXPECT_EQ(ParseRational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(ParseRational(".5"), Rational(1, 2));
  EXPECT_THROW(ParseRational("1/0"), Error);
  EXPECT_THROW(ParseRational("abc"), Error);
  EXPECT_THROW(ParseRational(""), Error);
  EXPECT_THROW(ParseRational("1.-5"), Error);
}

TEST(ToStringTest, AlwaysNumDen) {
  EXPECT_EQ(ToString(Rational(3, 4)), "3/4");
  EXPECT_EQ(ToString(Rational(5)), "5/1");
  EXPECT_EQ(ToString(BigInt(12)), "12");
}

TEST(IntegerHelpersTest, FloorCeilLog2) {
  EXPECT_EQ(Floor(Rational(-7, 2)), -4);
  EXPECT_EQ(Ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(Floor(Rational(8, 2)), 4);
  EXPECT_EQ(FloorLog2(Rational(1)), 0);
  EXPECT_EQ(FloorLog2(Rational(7)), 2);
  EXPECT_EQ(FloorLog2(Rational(8)), 3);
  EXPECT_EQ(FloorLog2(Rational(1, 3)), -2);
  EXPECT_EQ(FloorLog2(Rational(1, 4)), -2);
  EXPECT_EQ(FloorLog2(Rational(3, 2)), 0);
}

TEST(IntegerHelpersTest, CeilRationalPower) {
  // Smallest t with t^2 >= 27^2 * ... checked by brute force.
  for (unsigned long x = 0; x < 40; ++x) {
    for (unsigned long u = 1; u <= 3; ++u) {
      for (unsigned long v = 1; v <= 3; ++v) {
        BigInt t = CeilRationalPower(BigInt(x), u, v);
        BigInt xu, tv, tm;
        mpz_ui_pow_ui(xu.get_mpz_t(), x, u);
        mpz_pow_ui(tv.get_mpz_t(), t.get_mpz_t(), v);
        EXPECT_GE(tv, xu);
        if (t > 0) {
          BigInt t1 = t - 1;
          mpz_pow_ui(tm.get_mpz_t(), t1.get_mpz_t(), v);
          EXPECT_LT(tm, xu);
        }
      }
    }
  }
}

TEST(PowerTest, ExactCasesArePoints) {
  Enclosure r = Power(Rational(9, 16), Rational(1, 2));
  EXPECT_EQ(r.lo, Rational(3, 4));
  EXPECT_EQ(r.hi, Rational(3, 4));
  Enclosure s = Power(Rational(8), Rational(-2, 3));
  EXPECT_EQ(s.lo, Rational(1, 4));
  EXPECT_EQ(s.hi, Rational(1, 4));
}

TEST(PowerTest, SqrtTwoBracket) {
  Enclosure r = Power(Rational(2), Rational(1, 2), 100);
  EXPECT_LE(r.lo * r.lo, 2);
  EXPECT_GE(r.hi * r.hi, 2);
  EXPECT_LT(r.Width(), Rational(1, BigInt(1) << 95));
}

// Property: x^(u/v) bracket satisfies lo^v <= x^u <= hi^v exactly.
TEST(PowerTest, RandomBracketsAreSound) {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 300; ++trial) {
    Rational x(BigInt(static_cast<unsigned long>(rng() % 100000 + 1)),
               BigInt(static_cast<unsigned long>(rng() % 100000 + 1)));
    x.canonicalize();
    unsigned long u = rng() % 5 + 1, v = rng() % 4 + 1;
    bool neg = rng() % 2;
    Rational e(neg ? -static_cast<long>(u) : static_cast<long>(u),
               static_cast<long>(v));
    e.canonicalize();
    Enclosure r = Power(x, e, 80);
    unsigned long eu = neg ? BigInt(-e.get_num()).get_ui() : e.get_num().get_ui();
    unsigned long ev = e.get_den().get_ui();
    Rational base = neg ? Rational(1 / x) : x;
    EXPECT_LE(Pow(r.lo, ev), Pow(base, eu));
    EXPECT_GE(Pow(r.hi, ev), Pow(base, eu));
    EXPECT_LE(r.Width(), r.hi / (BigInt(1) << 70));
  }
}

TEST(PowerTest, EnclosureMonotone) {
  Enclosure x(Rational(1, 3), Rational(1, 2));
  Enclosure up = Power(x, Rational(3, 2));
  EXPECT_LE(up.lo * up.lo, Rational(1, 27));
  EXPECT_GE(up.hi * up.hi, Rational(1, 8));
  Enclosure down = Power(x, Rational(-1, 2));
  EXPECT_LE(down.lo * down.lo, 2);
  EXPECT_GE(down.hi * down.hi, 3);
}

TEST(LogTest, KnownValues) {
  // ln 2 = 0.693147180559945309417232121458...
  Enclosure l2 = Log(BigInt(2));
  EXPECT_LT(l2.hi, ParseRational("0.69314718055994530941723212146"));
  EXPECT_GT(l2.lo, ParseRational("0.69314718055994530941723212145"));
  EXPECT_EQ(Log(BigInt(1)).lo, 0);
  EXPECT_EQ(Log(BigInt(1)).hi, 0);
}

TEST(LogTest, BitLengthSanityBracket) {
  BigInt n = 1;
  mpz_ui_pow_ui(n.get_mpz_t(), 7, 500);
  Enclosure l = Log(n);
  long bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  Enclosure ln2 = Log(BigInt(2));
  EXPECT_LE(Rational(bits - 1) * ln2.lo, l.hi);
  EXPECT_GE(Rational(bits) * ln2.hi, l.lo);
  EXPECT_LT(l.Width(), Rational(1, BigInt(1) << 100));
}

TEST(EnclosureTest, ArithmeticIsOutward) {
  Enclosure a(Rational(-1), Rational(2)), b(Rational(3), Rational(4));
  Enclosure p = a * b;
  EXPECT_EQ(p.lo, -4);
  EXPECT_EQ(p.hi, 8);
  Enclosure d = a - b;
  EXPECT_EQ(d.lo, -5);
  EXPECT_EQ(d.hi, -1);
  Enclosure q = b / b;
  EXPECT_TRUE(q.Contains(1));
  EXPECT_THROW(b / a, Error);
  EXPECT_THROW(Intersect(a, Enclosure(Rational(5), Rational(6))), Error);
}

TEST(EnclosureTest, CoarsenWidensOnly) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational lo(BigInt(static_cast<unsigned long>(rng() % 1000000)) - 500000,
                BigInt(static_cast<unsigned long>(rng() % 9999 + 1)));
    lo.canonicalize();
    Rational hi = lo + Rational(1, static_cast<long>(rng() % 1000 + 1));
    Enclosure c = Coarsen(Enclosure(lo, hi), 20);
    EXPECT_LE(c.lo, lo);
    EXPECT_GE(c.hi, hi);
  }
}

TEST(EnclosureTest, CompareThreeValued) {
  Enclosure a(Rational(0), Rational(1)), b(Rational(2), Rational(3));
  EXPECT_EQ(Compare(a, b), Order3::kLess);
  EXPECT_EQ(Compare(b, a), Order3::kGreater);
  EXPECT_EQ(Compare(a, Enclosure(Rational(1), Rational(2))), Order3::kUndecided);
}

}  // namespace
}  // namespace dirichlet
