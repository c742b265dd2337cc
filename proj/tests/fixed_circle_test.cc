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
#include "dirichlet/fixed_circle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

ConvergentTable Table(const std::string& spec, int depth = 12) {
  return ConvergentTable::ExpandForPrecision(PartialQuotientSource::Parse(spec),
                                             depth, 128);
}

double CircleDist(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1 - d);
}

// Membership in F_k by direct evaluation in doubles. Returns -1 when y is
// within `slack` of deciding any ball, so the caller can skip it.
int FloatMember(double theta, double y, long qk, long qk1, double tau,
                double slack) {
  for (long n = qk + 1; n <= qk1; ++n) {
    double r = std::pow(static_cast<double>(n), -tau);
    bool in = false;
    for (long i = 1; i <= n; ++i) {
      double d = CircleDist(std::fmod(i * theta, 1.0), y);
      if (std::fabs(d - r) < slack) return -1;
      if (d < r) in = true;
    }
    if (!in) return 0;
  }
  return 1;
}

bool GridContains(const GridSet& g, GridInt y) {
  if (y == 0) return g.zero_in;
  for (const auto& [a, b] : g.segs) {
    if (a < y && y < b) return true;
  }
  return false;
}

TEST(TauTest, ParseAndRegime) {
  EXPECT_EQ(Tau::Parse("3/4").regime(), Tau::Regime::kSub);
  EXPECT_EQ(Tau::Parse("1").regime(), Tau::Regime::kOne);
  EXPECT_EQ(Tau::Parse("1.5").regime(), Tau::Regime::kSuper);
  EXPECT_EQ(Tau::Parse("6/4").num(), 3u);
  EXPECT_EQ(Tau::Parse("6/4").den(), 2u);
  EXPECT_THROW(Tau::Parse("0"), Error);
  EXPECT_THROW(Tau::Parse("-1/2"), Error);
}

TEST(GridTest, RoundTripConversions) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    BigInt z(static_cast<unsigned long>(rng()));
    z <<= static_cast<unsigned long>(rng() % 60);
    if (rng() % 2) z = -z;
    EXPECT_EQ(FromGrid(ToGrid(z)), z);
  }
}

TEST(GridTest, RadiusBracketsAreTight) {
  ConvergentTable t = Table("golden");
  FixedCircle c1(t, Tau(1));
  GridInt m = FixedCircle::Modulus();
  GridBracket r4 = c1.Radius(4);
  EXPECT_EQ(r4.lo, m / 4);
  EXPECT_EQ(r4.hi, m / 4);
  GridBracket r5 = c1.Radius(5);
  EXPECT_EQ(r5.lo, m / 5);
  EXPECT_EQ(r5.hi, m / 5 + 1);
  // 9^(-1/2) = 1/3.
  FixedCircle half(t, Tau(Rational(1, 2)));
  GridBracket r9 = half.Radius(9);
  EXPECT_LE(r9.lo * 3, m);
  EXPECT_GE(r9.hi * 3, m);
  EXPECT_LE(r9.hi - r9.lo, 1);
  EXPECT_TRUE(c1.RadiusAtLeastHalf(2));
  EXPECT_FALSE(c1.RadiusAtLeastHalf(3));
  EXPECT_TRUE(half.RadiusAtLeastHalf(4));
}

TEST(GridTest, FormsDifferingByIntegersAgreeModOne) {
  ConvergentTable t = Table("rule:a_k=k");
  FixedCircle c(t, Tau(1));
  GridInt m = FixedCircle::Modulus();
  // i theta - (q_k theta - p_k) = (i - q_k) theta + p_k.
  Form a = FixedCircle::Orbit(7) + (-c.Displacement(3));
  Form b = FixedCircle::Orbit(7 - t.q(3).get_si());
  EXPECT_EQ(((c.Lower(a) - c.Lower(b)) % m + m) % m, 0);
  EXPECT_EQ(((c.Upper(a) - c.Upper(b)) % m + m) % m, 0);
  EXPECT_LE(c.Lower(a), c.Upper(a));
}

TEST(GridTest, NarrowThetaRequired) {
  ConvergentTable shallow =
      ConvergentTable::Expand(PartialQuotientSource::Golden(), 10);
  EXPECT_THROW(FixedCircle(shallow, Tau(1)), Error);
}

TEST(OracleTest, GoldenG5IsFullAtTauOne) {
  ConvergentTable t = Table("golden");
  FixedCircle c(t, Tau(1));
  GridSet g = c.Gn(5, Rounding::kInner);
  EXPECT_TRUE(FixedCircle::ToArcSet(g).full());
}

TEST(OracleTest, DisjointBallsMeasure) {
  // tau = 2, n = 5: five balls of radius 1/25 around i theta; the orbit
  // points are at least 0.145 apart, so the balls are disjoint.
  ConvergentTable t = Table("golden");
  FixedCircle c(t, Tau(2));
  ArcSet inner = FixedCircle::ToArcSet(c.Gn(5, Rounding::kInner));
  ArcSet outer = FixedCircle::ToArcSet(c.Gn(5, Rounding::kOuter));
  EXPECT_EQ(inner.ComponentCount(), 5);
  EXPECT_EQ(outer.ComponentCount(), 5);
  Rational target(2, 5);
  Rational eps(1, BigInt(1) << 80);
  EXPECT_LE(inner.Measure(), target);
  EXPECT_GE(outer.Measure(), target);
  EXPECT_LT(outer.Measure() - inner.Measure(), eps);
  EXPECT_TRUE(inner.IsSubsetOf(outer));
}

TEST(OracleTest, LargeRadiusCases) {
  ConvergentTable t = Table("golden");
  FixedCircle c(t, Tau(1));
  // n = 2, tau = 1: radius exactly 1/2. The inner ball misses a small arc
  // around the antipode, the outer ball is the circle.
  GridSet in = c.Ball(1, c.Radius(2), Rounding::kInner);
  GridSet out = c.Ball(1, c.Radius(2), Rounding::kOuter);
  EXPECT_FALSE(FixedCircle::ToArcSet(in).full());
  EXPECT_GT(FixedCircle::ToArcSet(in).Measure(), Rational(99, 100));
  EXPECT_TRUE(FixedCircle::ToArcSet(out).full());
  EXPECT_TRUE(FixedCircle::ToArcSet(c.Ball(1, c.Radius(1), Rounding::kInner)).full());
}

TEST(OracleTest, BudgetExceeded) {
  ConvergentTable t = Table("golden", 25);
  FixedCircle c(t, Tau(1));
  try {
    c.Fk(20, Rounding::kInner, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOracleInfeasible);
  }
}

TEST(OracleTest, InnerInsideOuter) {
  for (const char* spec : {"golden", "rule:a_k=k", "periodic:1,2", "target:w=2;seed=2,2"}) {
    ConvergentTable t = Table(spec);
    for (const char* tau : {"1/2", "3/4", "1", "3/2", "2"}) {
      FixedCircle c(t, Tau::Parse(tau));
      for (int k = 0; k + 2 < t.depth() && t.q(k + 1) <= 300; ++k) {
        ArcSet in = FixedCircle::ToArcSet(c.Fk(k, Rounding::kInner, 300));
        ArcSet out = FixedCircle::ToArcSet(c.Fk(k, Rounding::kOuter, 300));
        EXPECT_TRUE(in.IsSubsetOf(out)) << spec << " tau=" << tau << " k=" << k;
        EXPECT_LT(out.Measure() - in.Measure(), Rational(1, BigInt(1) << 70));
      }
    }
  }
}

// Property: random sample points away from every ball boundary are
// classified the same way by the oracle and by double arithmetic.
TEST(OracleTest, AgreesWithFloatMembership) {
  struct Case {
    const char* spec;
    double theta;
  };
  const double golden = (std::sqrt(5.0) - 1) / 2;
  // [0; 2, 1, 1, ...] = 1 / (2 + golden).
  const Case cases[] = {{"golden", golden}, {"periodic:2|1", 1 / (2 + golden)}};
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Case& cs : cases) {
    ConvergentTable t = Table(cs.spec);
    for (const char* tau_text : {"1/2", "1", "3/2", "2"}) {
      Tau tau = Tau::Parse(tau_text);
      double tau_d = ToDouble(tau.value());
      FixedCircle c(t, tau);
      for (int k = 1; k < 8; ++k) {
        long qk = t.q(k).get_si(), qk1 = t.q(k + 1).get_si();
        GridSet in = c.Fk(k, Rounding::kInner, 1000);
        GridSet out = c.Fk(k, Rounding::kOuter, 1000);
        for (int s = 0; s < 200; ++s) {
          double y = unit(rng);
          int member = FloatMember(cs.theta, y, qk, qk1, tau_d, 1e-9);
          if (member < 0) continue;
          GridInt gy = FixedCircle::FloorPoint(Rational(y));
          if (member == 1) {
            EXPECT_TRUE(GridContains(in, gy)) << cs.spec << " k=" << k << " y=" << y;
          } else {
            EXPECT_FALSE(GridContains(out, gy)) << cs.spec << " k=" << k << " y=" << y;
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace dirichlet
