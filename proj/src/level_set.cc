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
#include "dirichlet/level_set.h"

#include <algorithm>
#include <utility>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

// Certified inequalities must hold with this margin so that the induced set
// inclusions survive rounding to the 2^-90 grid.
Rational Slack() {
  Rational s(1);
  mpz_mul_2exp(s.get_den_mpz_t(), s.get_den_mpz_t(), 80);
  return s;
}

// lhs < rhs with margin: true, false, or kUndecidable.
bool CertifiedLess(const Enclosure& lhs, const Enclosure& rhs,
                   const std::string& what) {
  if (lhs.hi + Slack() <= rhs.lo) return true;
  if (lhs.lo >= rhs.hi) return false;
  throw Error(ErrorKind::kUndecidable, what + " undecidable at this precision");
}

bool CertifiedOrFalse(const Enclosure& lhs, const Enclosure& rhs) {
  return lhs.hi + Slack() <= rhs.lo;
}

Enclosure Min(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

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
  ArcSet Take() {
    if (full_) return ArcSet::Full();
    return FixedCircle::ToArcSet(
        FixedCircle::UniteSegments(std::move(segs_), zero_in_));
  }

 private:
  std::vector<std::pair<GridInt, GridInt>> segs_;
  bool zero_in_ = false;
  bool full_ = false;
};

}  // namespace

const char* ClassificationName(Classification c) {
  switch (c) {
    case Classification::kFullCircle:
      return "FullCircle";
    case Classification::kExactBallUnion:
      return "ExactBallUnion";
    case Classification::kSandwich:
      return "Sandwich";
  }
  return "?";
}

const char* MembershipName(Membership m) {
  switch (m) {
    case Membership::kIn:
      return "In";
    case Membership::kOut:
      return "Out";
    case Membership::kUndecided:
      return "Undecided";
  }
  return "?";
}

LevelSetBuilder::LevelSetBuilder(const ConvergentTable& table, const Tau& tau)
    : table_(&table), tau_(tau), circle_(table, tau) {}

void LevelSetBuilder::CheckK(int k) const {
  if (k < 0 || k + 2 >= table_->depth()) {
    throw Error(ErrorKind::kInsufficientDepth,
                "level k = " + std::to_string(k) + " needs depth > k + 2");
  }
}

int64_t LevelSetBuilder::Count(const BigInt& n) const {
  if (n > kMaxArcs) {
    throw Error(ErrorKind::kOracleInfeasible,
                "construction needs " + dirichlet::ToString(n) + " arcs");
  }
  return n.get_si();
}

Enclosure LevelSetBuilder::Radius(const BigInt& n) const {
  return Power(Rational(n), -tau_.value());
}

ArcSet LevelSetBuilder::Gn(const BigInt& n, Rounding mode) const {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  if (circle_.RadiusAtLeastHalf(n)) {
    throw Error(ErrorKind::kInvalidArgument, "radius n^-tau >= 1/2");
  }
  if (n > table_->q(table_->depth())) {
    throw Error(ErrorKind::kInsufficientDepth, "n exceeds q_K");
  }
  return FixedCircle::ToArcSet(circle_.Gn(Count(n), mode));
}

ArcSet LevelSetBuilder::FkOracle(int k, Rounding mode, int64_t budget) const {
  if (k < 0 || k + 1 > table_->depth()) {
    throw Error(ErrorKind::kInsufficientDepth, "level beyond table depth");
  }
  return FixedCircle::ToArcSet(circle_.Fk(k, mode, budget));
}

bool LevelSetBuilder::GapSumCover(int k) const {
  CheckK(k);
  Enclosure gaps = table_->NormQk(k - 1) + table_->NormQk(k);
  return CertifiedLess(gaps, Rational(2) * Radius(table_->q(k + 1)),
                       "gap-sum cover");
}

bool LevelSetBuilder::UnitQuotient(int k) const {
  CheckK(k);
  return tau_.value() == 1 && table_->a(k + 1) == 1;
}

bool LevelSetBuilder::ThreeDistanceCover(int k) const {
  CheckK(k);
  const ConvergentTable& t = *table_;
  const BigInt& qk = t.q(k);
  const BigInt& qk1 = t.q(k + 1);
  const BigInt& qkm = t.q(k - 1);
  BigInt lo = qk + 1, hi = qk1;
  if (lo > hi) return true;
  Enclosure prev = t.NormQk(k - 1), norm = t.NormQk(k);
  bool undecided = false;
  // G_n is the circle iff 2 n^-tau exceeds the largest orbit gap. Both sides
  // only shrink inside a block, so the block's last n decides it.
  auto check = [&](const BigInt& start, const BigInt& end, const Enclosure& gap) {
    BigInt s = std::max(start, lo), e = std::min(end, hi);
    if (s > e) return true;
    Enclosure two_r = Rational(2) * Radius(e);
    if (gap.hi + Slack() <= two_r.lo) return true;
    if (gap.lo >= two_r.hi) return false;
    undecided = true;
    return true;
  };
  if (!check(qk + 1, qk + qkm - 1, prev + norm)) return false;
  const BigInt& a = t.a(k + 1);
  for (BigInt r = 1; r <= a; ++r) {
    BigInt start = r * qk + qkm;
    if (start > hi) break;
    if (r > 4 * kMaxArcs) {
      throw Error(ErrorKind::kUndecidable, "three-distance cover: too many blocks");
    }
    Enclosure gap = prev - Rational(r - 1) * norm;
    if (!check(start, start + qk - 1, gap)) return false;
  }
  if (undecided) {
    throw Error(ErrorKind::kUndecidable, "three-distance cover undecidable");
  }
  return true;
}

bool LevelSetBuilder::SeparatedBalls(int k) const {
  CheckK(k);
  Enclosure lhs = Radius(table_->q(k + 1)) + Radius(table_->q(k));
  Enclosure norm = table_->NormQk(k);
  if (lhs.hi + Slack() <= norm.lo) return true;
  if (lhs.lo > norm.hi) return false;
  throw Error(ErrorKind::kUndecidable, "separated balls undecidable");
}

bool LevelSetBuilder::DisjointBalls(int k) const {
  CheckK(k);
  return CertifiedLess(Rational(2) * Radius(table_->q(k + 1)), table_->NormQk(k),
                       "disjoint balls");
}

Classification LevelSetBuilder::Classify(int k) const {
  CheckK(k);
  if (UnitQuotient(k) || ThreeDistanceCover(k)) return Classification::kFullCircle;
  if (tau_.regime() == Tau::Regime::kSuper && SeparatedBalls(k)) {
    return Classification::kExactBallUnion;
  }
  return Classification::kSandwich;
}

Enclosure LevelSetBuilder::CTau() const {
  const Rational& t = tau_.value();
  Rational e1 = 1 / (t + 1), e2 = -t / (t + 1);
  return Power(t, e1) + Power(t, e2);
}

BigInt LevelSetBuilder::Ck(int k) const {
  CheckK(k);
  const BigInt& q = table_->q(k);
  Enclosure norm = table_->NormQk(k);
  unsigned long u = tau_.num(), v = tau_.den();
  BigInt qu, nlo_num, nhi_num;
  mpz_pow_ui(qu.get_mpz_t(), q.get_mpz_t(), u);
  auto pow_q = [](const Rational& x, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
    return r;
  };
  Rational nlo = pow_q(norm.lo, v), nhi = pow_q(norm.hi, v);
  // c <= (||q|| q^tau)^(-1/(tau+1)) iff c^(u+v) q^u ||q||^v <= 1.
  auto holds = [&](const BigInt& c) {
    BigInt cp;
    mpz_pow_ui(cp.get_mpz_t(), c.get_mpz_t(), u + v);
    Rational base(cp * qu);
    if (base * nhi <= 1) return true;
    if (base * nlo > 1) return false;
    throw Error(ErrorKind::kUndecidable, "c_k undecidable at this precision");
  };
  Enclosure x = Rational(qu) * norm;
  Enclosure est = Power(Coarsen(x, 96), -1 / (tau_.value() + 1), 64);
  BigInt c = Floor(est.lo);
  if (c < 0) c = 0;
  while (c > 0 && !holds(c)) --c;
  while (holds(c + 1)) ++c;
  return c;
}

Enclosure LevelSetBuilder::ChainRadius(int k, const BigInt& i) const {
  CheckK(k);
  const BigInt& qk = table_->q(k);
  const BigInt& qk1 = table_->q(k + 1);
  Enclosure norm = table_->NormQk(k);
  BigInt c_lo = (qk + 1 - i) / qk, c_hi = (qk1 - i) / qk;
  if (c_hi - c_lo > kChainBudget) {
    throw Error(ErrorKind::kOracleInfeasible, "chain radius: too many terms");
  }
  std::optional<Enclosure> best;
  for (BigInt c = c_lo; c <= c_hi; ++c) {
    BigInt n = std::min(qk1, BigInt((c + 1) * qk + i - 1));
    Enclosure term = Rational(c) * norm + Radius(n);
    best = best ? Min(*best, term) : term;
  }
  return *best;
}

Enclosure LevelSetBuilder::ChainRadiusBound(int k, const BigInt& i) const {
  CheckK(k);
  const BigInt& qk = table_->q(k);
  const BigInt& a = table_->a(k + 1);
  if (a > kChainBudget) {
    throw Error(ErrorKind::kOracleInfeasible, "chain bound: too many terms");
  }
  Enclosure norm = table_->NormQk(k);
  std::optional<Enclosure> best;
  for (BigInt c = 1; c <= a + 1; ++c) {
    Enclosure term = Rational(c - 1) * norm + Radius(c * qk + i - 1);
    best = best ? Min(*best, term) : term;
  }
  return *best;
}

ArcSet LevelSetBuilder::ChainInner(int k) const {
  CheckK(k);
  if (tau_.value() > 1) throw Error(ErrorKind::kInvalidArgument, "needs tau <= 1");
  const BigInt& qk1 = table_->q(k + 1);
  if (qk1 > kChainBudget) {
    throw Error(ErrorKind::kOracleInfeasible, "chain construction over budget");
  }
  int64_t qk = Count(table_->q(k)), q1 = qk1.get_si();
  const FixedCircle& c = circle_;
  Form norm = c.NormForm(k);
  Form r_last = FixedCircle::Offset(c.Radius(qk1));
  bool even = k % 2 == 0;
  Accumulator acc;
  for (int64_t i = 1; i <= qk; ++i) {
    Form center = FixedCircle::Orbit(i);
    // The chain i theta, (i + q_k) theta, ... runs to the right for even k.
    int64_t c_lo = (qk + 1 - i) / qk, c_hi = (q1 - i) / qk;
    GridInt chain_end = 0;
    for (int64_t m = c_lo; m <= c_hi; ++m) {
      int64_t n = std::min(q1, (m + 1) * qk + i - 1);
      Form rad = FixedCircle::Offset(c.Radius(BigInt(static_cast<long>(n))));
      GridInt v = even ? c.Lower(center + m * norm + rad)
                       : c.Upper(center + (-(m * norm)) + (-rad));
      if (m == c_lo || (even ? v < chain_end : v > chain_end)) chain_end = v;
    }
    if (even) {
      acc.Add(c.RawArc(c.Upper(center + (-r_last)), chain_end));
    } else {
      acc.Add(c.RawArc(chain_end, c.Lower(center + r_last)));
    }
  }
  return acc.Take();
}

Enclosure LevelSetBuilder::ChainBoundRightRadius(int k) const {
  CheckK(k);
  const Rational& t = tau_.value();
  Enclosure norm = table_->NormQk(k);
  Enclosure y = Enclosure::Point(1) / (Power(Rational(table_->q(k)), t) * norm);
  Enclosure scaled = CTau() * Power(y, t / (t + 1));
  return (scaled + Rational(-2)) * norm;
}

ArcSet LevelSetBuilder::ChainBoundInner(int k) const {
  CheckK(k);
  if (tau_.value() > 1) throw Error(ErrorKind::kInvalidArgument, "needs tau <= 1");
  Enclosure right = ChainBoundRightRadius(k);
  if (right.lo <= 0) return ArcSet::Empty();
  const FixedCircle& c = circle_;
  Form left_mag = c.NormForm(k);
  Form right_mag = FixedCircle::Offset(FixedCircle::FromEnclosure(right));
  Accumulator acc;
  for (int64_t i = 1, n = Count(table_->q(k)); i <= n; ++i) {
    acc.Add(c.OrientedArc(k, FixedCircle::Orbit(i), left_mag, right_mag,
                          Rounding::kInner));
  }
  return acc.Take();
}

ArcSet LevelSetBuilder::ChainOuter(int k) const {
  CheckK(k);
  if (tau_.value() > 1) throw Error(ErrorKind::kInvalidArgument, "needs tau <= 1");
  const Rational& t = tau_.value();
  Enclosure x = Power(table_->NormQk(k) / Enclosure::Point(Rational(table_->q(k))),
                      t / (t + 1));
  Enclosure left = Power(t, -t / (t + 1)) * x;
  Enclosure right = CTau() * x;
  if (left.lo + right.lo >= 1) return ArcSet::Full();
  const FixedCircle& c = circle_;
  Form lm = FixedCircle::Offset(FixedCircle::FromEnclosure(left));
  Form rm = FixedCircle::Offset(FixedCircle::FromEnclosure(right));
  Accumulator acc;
  for (int64_t i = 1, n = Count(table_->q(k)); i <= n; ++i) {
    acc.Add(c.OrientedArc(k, FixedCircle::Orbit(i), lm, rm, Rounding::kOuter));
  }
  return acc.Take();
}

std::optional<ArcSet> LevelSetBuilder::QuarterInner(int k) const {
  CheckK(k);
  if (tau_.value() > 1) return std::nullopt;
  const Rational& t = tau_.value();
  Enclosure norm = table_->NormQk(k);
  Enclosure x = Power(norm / Enclosure::Point(Rational(table_->q(k))), t / (t + 1));
  Enclosure right = Rational(1, 4) * x - norm;
  if (right.hi > 0 && !(right.hi <= ChainBoundRightRadius(k).lo)) return std::nullopt;
  if (right.lo <= 0) return ArcSet::Empty();
  const FixedCircle& c = circle_;
  Form lm = c.NormForm(k);
  Form rm = FixedCircle::Offset(FixedCircle::FromEnclosure(right));
  Accumulator acc;
  for (int64_t i = 1, n = Count(table_->q(k)); i <= n; ++i) {
    acc.Add(c.OrientedArc(k, FixedCircle::Orbit(i), lm, rm, Rounding::kInner));
  }
  return acc.Take();
}

ArcSet LevelSetBuilder::BallUnion(int k, const BigInt& count, Rounding mode) const {
  CheckK(k);
  GridBracket r = circle_.Radius(table_->q(k + 1));
  Accumulator acc;
  for (int64_t i = 1, n = Count(count); i <= n; ++i) {
    acc.Add(circle_.Ball(i, r, mode));
  }
  return acc.Take();
}

BigInt LevelSetBuilder::BallChainInnerCount(int k) const {
  CheckK(k);
  const BigInt& qk = table_->q(k);
  BigInt cap = table_->q(k + 1) / qk;
  BigInt hi = std::min(Ck(k), cap);
  Enclosure norm = table_->NormQk(k);
  Enclosure r = Radius(table_->q(k + 1));
  // c works when m ||q_k|| + r <= ((c - m + 1) q_k)^-tau for m < c; a
  // smaller c only relaxes every condition.
  auto works = [&](const BigInt& c) {
    for (BigInt m = 1; m < c; ++m) {
      if (!CertifiedOrFalse(Rational(m) * norm + r, Radius((c - m + 1) * qk))) {
        return false;
      }
    }
    return true;
  };
  BigInt lo = 1;
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (works(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo * qk;
}

BigInt LevelSetBuilder::BallCountOuter(int k) const {
  CheckK(k);
  const BigInt& qk = table_->q(k);
  const BigInt& qk1 = table_->q(k + 1);
  Rational base = table_->NormQk(k).lo - Radius(qk1).hi - Slack();
  if (base <= 0) return qk1;
  BigInt n0 = Ceil(Power(base, -1 / tau_.value()).hi);
  BigInt count = std::max(BigInt(qk + n0 - 1), BigInt(2 * qk));
  return std::min(count, qk1);
}

LevelSet LevelSetBuilder::Build(int k) const {
  CheckK(k);
  LevelSet out;
  out.k = k;
  out.classification = Classify(k);
  auto try_cert = [&](const char* name, auto&& test) {
    try {
      if (test()) out.certificates.push_back(name);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndecidable) throw;
    }
  };
  bool super = tau_.regime() == Tau::Regime::kSuper;
  if (out.classification == Classification::kFullCircle) {
    try_cert("gap-sum-cover", [&] { return GapSumCover(k); });
    try_cert("unit-quotient", [&] { return UnitQuotient(k); });
    try_cert("three-distance-cover", [&] { return ThreeDistanceCover(k); });
    out.inner = ArcSet::Full();
    out.outer = ArcSet::Full();
    return out;
  }
  if (out.classification == Classification::kExactBallUnion) {
    // The ball around (q_k + 1) theta survives as well.
    BigInt count = table_->q(k) + 1;
    out.certificates.push_back("separated-balls");
    out.inner = BallUnion(k, count, Rounding::kInner);
    out.outer = BallUnion(k, count, Rounding::kOuter);
    out.outer_count = count;
    try_cert("disjoint-balls", [&] { return DisjointBalls(k); });
    out.uncertified = out.certificates.back() != "disjoint-balls";
    return out;
  }
  std::vector<ArcSet> inners;
  std::optional<ArcSet> outer;
  auto add_outer = [&](ArcSet s) {
    outer = outer ? Intersect(*outer, s) : std::move(s);
  };
  if (!super) {
    if (table_->q(k + 1) <= kChainBudget) {
      inners.push_back(ChainInner(k));
      out.certificates.push_back("chain-inner");
    }
    ArcSet bound = ChainBoundInner(k);
    if (!bound.empty()) {
      inners.push_back(std::move(bound));
      out.certificates.push_back("chain-bound-inner");
    }
    if (std::optional<ArcSet> quarter = QuarterInner(k); quarter && !quarter->empty()) {
      inners.push_back(std::move(*quarter));
      out.certificates.push_back("quarter-inner");
    }
    if (tau_.regime() == Tau::Regime::kOne && k >= 1) {
      TauOne one(circle_);
      inners.push_back(one.FkInner(k, false));
      inners.push_back(one.FkInner(k, true));
      out.certificates.push_back("tau-one-inner");
    }
    add_outer(ChainOuter(k));
    out.certificates.push_back("chain-outer");
    if (table_->q(k + 1) <= kMaxArcs) {
      add_outer(BallUnion(k, table_->q(k + 1), Rounding::kOuter));
      out.certificates.push_back("last-level-outer");
    }
  } else {
    inners.push_back(BallUnion(k, table_->q(k), Rounding::kInner));
    out.certificates.push_back("first-balls-inner");
    BigInt chain = BallChainInnerCount(k);
    if (chain > table_->q(k)) {
      inners.push_back(BallUnion(k, chain, Rounding::kInner));
      out.certificates.push_back("ball-chain-inner");
    }
    BigInt count = BallCountOuter(k);
    add_outer(BallUnion(k, count, Rounding::kOuter));
    out.certificates.push_back("ball-count-outer");
    out.outer_count = count;
    out.stated_outer_count = (Ck(k) + 2) * table_->q(k);
    try_cert("disjoint-balls", [&] { return DisjointBalls(k); });
    out.uncertified = out.certificates.back() != "disjoint-balls";
  }
  out.inner = UniteAll(std::move(inners));
  out.outer = outer ? *outer : ArcSet::Full();
  if (!out.inner.IsSubsetOf(out.outer)) {
    throw Error(ErrorKind::kInvariantViolation,
                "inner construction not inside outer at k = " + std::to_string(k));
  }
  return out;
}

std::vector<Membership> LevelSetBuilder::Trace(const Rational& y, int k_lo,
                                               int k_hi) const {
  if (y < 0 || y >= 1) throw Error(ErrorKind::kInvalidArgument, "y must be in [0, 1)");
  std::vector<Membership> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    Membership m = Membership::kUndecided;
    try {
      LevelSet s = Build(k);
      if (s.inner.Contains(y)) {
        m = Membership::kIn;
      } else if (!s.outer.Contains(y)) {
        m = Membership::kOut;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kOracleInfeasible &&
          e.kind() != ErrorKind::kUndecidable) {
        throw;
      }
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace dirichlet
