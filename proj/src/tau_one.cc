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

#include <utility>
#include <vector>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

// Collects arcs and unites them once at the end.
class Accumulator {
 public:
  void Add(const GridSet& g) {
    if (full_) return;
    if (g.zero_in && g.segs.size() == 1) {
      full_ = true;
      return;
    }
    zero_in_ = zero_in_ || g.zero_in;
    segs_.insert(segs_.end(), g.segs.begin(), g.segs.end());
  }
  GridSet Take() {
    if (full_) return FullSegments(FixedCircle::Modulus());
    return FixedCircle::UniteSegments(std::move(segs_), zero_in_);
  }

 private:
  std::vector<std::pair<GridInt, GridInt>> segs_;
  bool zero_in_ = false;
  bool full_ = false;
};

Rational Slack() {
  Rational s(1);
  mpz_mul_2exp(s.get_den_mpz_t(), s.get_den_mpz_t(), 80);
  return s;
}

}  // namespace

BigInt RadiusMultiplier(const BigInt& a) {
  if (a < 1) throw Error(ErrorKind::kInvalidArgument, "partial quotient must be >= 1");
  if (a == 2) return 1;
  return FloorRoot(BigInt(4 * a + 5), 2) - 3;
}

BigInt AdjustedRadiusMultiplier(const BigInt& a, const BigInt& next) {
  if (a == 4 && next >= 2) return 2;
  return RadiusMultiplier(a);
}

TauOne::TauOne(const FixedCircle& circle) : circle_(&circle) {
  if (circle.tau().value() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "tau-one machinery needs tau = 1");
  }
}

BigInt TauOne::R(int k) const { return RadiusMultiplier(table().a(k + 1)); }

BigInt TauOne::RTilde(int k) const {
  return AdjustedRadiusMultiplier(table().a(k + 1), table().a(k + 2));
}

bool TauOne::InLambda(int k) const {
  return table().a(k + 1) >= 3 || table().a(k + 2) == 2;
}

int64_t TauOne::Index(const BigInt& n) const {
  if (n > FixedCircle::kMaxCoefficient) {
    throw Error(ErrorKind::kOracleInfeasible, "too many intervals to build");
  }
  return n.get_si();
}

GridSet TauOne::FkInnerGrid(int k, bool adjusted) const {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  const FixedCircle& c = *circle_;
  int64_t mult = Index(adjusted ? RTilde(k) : R(k));
  BigInt count = table().q(k);
  if (adjusted && table().a(k) >= 2) {
    BigInt limit = (RTilde(k - 1) + 1) * table().q(k - 1);
    if (limit < count) count = limit;
  }
  Form left = c.NormForm(k);
  Form right = mult * c.NormForm(k) + c.NormForm(k + 1);
  Accumulator acc;
  for (int64_t i = 1, n = Index(count); i <= n; ++i) {
    acc.Add(c.OrientedArc(k, FixedCircle::Orbit(i), left, right, Rounding::kInner));
  }
  return acc.Take();
}

ArcSet TauOne::FkInner(int k, bool adjusted) const {
  return FixedCircle::ToArcSet(FkInnerGrid(k, adjusted));
}

GridSet TauOne::FTildeGrid(int k) const {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  const FixedCircle& c = *circle_;
  const BigInt& a = table().a(k + 1);
  if (a == 1) return FullSegments(FixedCircle::Modulus());
  Form left, right;
  int64_t count;
  if (a == 2) {
    count = Index(table().q(k - 1));
    left = Index(table().a(k) - 1) * c.NormForm(k - 1) + c.NormForm(k);
    right = c.NormForm(k) + c.NormForm(k + 1);
  } else {
    count = Index(table().q(k));
    left = c.NormForm(k);
    right = Index(RTilde(k)) * c.NormForm(k) + c.NormForm(k + 1);
  }
  Accumulator acc;
  for (int64_t i = 1; i <= count; ++i) {
    acc.Add(c.OrientedArc(k, FixedCircle::Orbit(i), left, right, Rounding::kInner));
  }
  return acc.Take();
}

ArcSet TauOne::FTilde(int k) const { return FixedCircle::ToArcSet(FTildeGrid(k)); }

GridSet TauOne::DGrid(int k) const {
  bool two1 = table().a(k + 1) == 2, two2 = table().a(k + 2) == 2;
  if (!two1 && !two2) return FTildeGrid(k);
  if (!two1 && two2) return Intersect(FTildeGrid(k), FTildeGrid(k + 1));
  if (two1 && two2) return FTildeGrid(k + 1);
  return FullSegments(FixedCircle::Modulus());
}

ArcSet TauOne::D(int k) const { return FixedCircle::ToArcSet(DGrid(k)); }

Enclosure TauOne::GapBound(int k) const {
  return Rational(1, 7) * table().NormQk(k - 1);
}

std::optional<Rational> TauOne::MinGap(int k) const { return D(k).MinGap(); }

bool TauOne::GapCheck(int k) const {
  std::optional<Rational> gap = MinGap(k);
  if (!gap) return false;
  return *gap >= GapBound(k).lo - Slack();
}

}  // namespace dirichlet
