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
#include "dirichlet/tau_one.h"

#include <gtest/gtest.h>

#include <random>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

TEST(RadiusMultiplierTest, SmallValues) {
  const int expected[] = {0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4};
  for (int a = 1; a <= 12; ++a) {
    EXPECT_EQ(RadiusMultiplier(a), expected[a]) << a;
  }
  EXPECT_EQ(AdjustedRadiusMultiplier(4, 1), 1);
  EXPECT_EQ(AdjustedRadiusMultiplier(4, 2), 2);
  EXPECT_EQ(AdjustedRadiusMultiplier(7, 9), 2);
}

TEST(RadiusMultiplierTest, BoundsOverRange) {
  for (long a = 1; a <= 5000; ++a) {
    BigInt r = RadiusMultiplier(a);
    EXPECT_GE(r, 0);
    EXPECT_LT(r, a);
    for (long next : {1, 2, 3}) {
      BigInt rt = AdjustedRadiusMultiplier(a, next);
      EXPECT_GE(rt, r);
      EXPECT_LE(2 * rt, a) << a;
    }
  }
}

TEST(TauOneTest, RequiresTauOne) {
  ConvergentTable t = ConvergentTable::ExpandForPrecision(
      PartialQuotientSource::Golden(), 10, 128);
  FixedCircle c(t, Tau::Parse("2"));
  EXPECT_THROW(TauOne{c}, Error);
}

TEST(TauOneTest, LambdaAndFullCase) {
  ConvergentTable t = ConvergentTable::ExpandForPrecision(
      PartialQuotientSource::Parse("periodic:3,2,5,2,2,1|4"), 10, 128);
  FixedCircle c(t, Tau::Parse("1"));
  TauOne one(c);
  EXPECT_TRUE(one.InLambda(0));   // a_1 = 3
  EXPECT_FALSE(one.InLambda(1));  // a_2 = 2, a_3 = 5
  EXPECT_TRUE(one.D(1).full());
  EXPECT_TRUE(one.InLambda(3));   // a_5 = 2
  EXPECT_FALSE(one.InLambda(5));  // a_6 = 1, a_7 = 4
}

std::string RandomSpec(std::mt19937_64& rng) {
  std::string s = "periodic:";
  int len = 6 + static_cast<int>(rng() % 5);
  for (int i = 0; i < len; ++i) {
    // Mostly small quotients with the occasional 2 or large one.
    int a = static_cast<int>(rng() % 10) < 7 ? 1 + static_cast<int>(rng() % 3)
                                             : 4 + static_cast<int>(rng() % 9);
    s += std::to_string(a) + (i + 1 < len ? "," : "");
  }
  return s + "|1,2";
}

// Property: the tau = 1 families sit inside F_k, D_k has q_k components and
// gaps of at least ||q_{k-1}||/7 for k in Lambda.
TEST(TauOneTest, FamiliesAgainstOracle) {
  std::mt19937_64 rng(977);
  int lambda_levels = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::string spec = RandomSpec(rng);
    ConvergentTable t = ConvergentTable::ExpandForPrecision(
        PartialQuotientSource::Parse(spec), 12, 128);
    FixedCircle c(t, Tau::Parse("1"));
    TauOne one(c);
    for (int k = 1; k + 3 < t.depth() && t.q(k + 2) <= 800; ++k) {
      SCOPED_TRACE(spec + " k=" + std::to_string(k));
      ArcSet fk = FixedCircle::ToArcSet(c.Fk(k, Rounding::kOuter, 1000));
      ArcSet fk1 = FixedCircle::ToArcSet(c.Fk(k + 1, Rounding::kOuter, 1000));
      EXPECT_TRUE(one.FkInner(k, false).IsSubsetOf(fk));
      EXPECT_TRUE(one.FkInner(k, true).IsSubsetOf(fk));
      EXPECT_TRUE(one.FTilde(k).IsSubsetOf(fk));
      if (!one.InLambda(k)) continue;
      ++lambda_levels;
      ArcSet d = one.D(k);
      EXPECT_EQ(d.ComponentCount(), t.q(k));
      EXPECT_TRUE(d.IsSubsetOf(t.a(k + 2) == 2 ? fk1 : fk));
      EXPECT_TRUE(one.GapCheck(k));
    }
  }
  EXPECT_GT(lambda_levels, 50);
}

}  // namespace
}  // namespace dirichlet
