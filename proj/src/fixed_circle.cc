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

#include <algorithm>
#include <utility>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

BigInt GridModulus() { return BigInt(1) << FixedCircle::kBits; }

GridInt Mul(int64_t a, GridInt b) { return GridInt(a) * b; }

void CheckCoefficient(int64_t c) {
  if (c > FixedCircle::kMaxCoefficient || c < -FixedCircle::kMaxCoefficient) {
    throw Error(ErrorKind::kInsufficientDepth,
                "orbit index too large for the fixed-point circle");
  }
}

}  // namespace

GridInt ToGrid(const BigInt& z) {
  BigInt a = abs(z);
  if (mpz_sizeinbase(a.get_mpz_t(), 2) > 126) {
    throw Error(ErrorKind::kInvariantViolation, "grid value out of range");
  }
  BigInt hi = a >> 64;
  BigInt lo = a - (hi << 64);
  GridInt r = (GridInt(static_cast<unsigned long>(hi.get_ui())) << 64) +
              GridInt(static_cast<unsigned long>(lo.get_ui()));
  return z < 0 ? -r : r;
}

BigInt FromGrid(GridInt x) {
  bool neg = x < 0;
  unsigned __int128 a = neg ? static_cast<unsigned __int128>(-x)
                            : static_cast<unsigned __int128>(x);
  BigInt r(static_cast<unsigned long>(a >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(a & ~0ULL);
  return neg ? BigInt(-r) : r;
}

Tau::Tau(const Rational& value) : value_(value) {
  value_.canonicalize();
  if (value_ <= 0) throw Error(ErrorKind::kInvalidArgument, "tau must be > 0");
  if (!value_.get_num().fits_ulong_p() || !value_.get_den().fits_ulong_p()) {
    throw Error(ErrorKind::kInvalidArgument, "tau numerator/denominator too large");
  }
  u_ = value_.get_num().get_ui();
  v_ = value_.get_den().get_ui();
}

Tau Tau::Parse(const std::string& text) { return Tau(ParseRational(text)); }

Tau::Regime Tau::regime() const {
  if (value_ < 1) return Regime::kSub;
  if (value_ == 1) return Regime::kOne;
  return Regime::kSuper;
}

GridBracket operator+(const GridBracket& a, const GridBracket& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

GridBracket operator-(const GridBracket& a) { return {-a.hi, -a.lo}; }

Form operator+(const Form& a, const Form& b) {
  return {a.alpha + b.alpha, a.beta + b.beta, a.rho + b.rho};
}

Form operator-(const Form& a) { return {-a.alpha, -a.beta, -a.rho}; }

Form operator*(int64_t c, const Form& a) {
  GridBracket r{Mul(c, a.rho.lo), Mul(c, a.rho.hi)};
  if (c < 0) std::swap(r.lo, r.hi);
  return {c * a.alpha, c * a.beta, r};
}

FixedCircle::FixedCircle(const ConvergentTable& table, const Tau& tau)
    : table_(&table), tau_(tau) {
  Rational limit(1);
  mpz_mul_2exp(limit.get_den_mpz_t(), limit.get_den_mpz_t(), kBits + 4);
  if (table.theta().Width() > limit) {
    throw Error(ErrorKind::kInsufficientDepth,
                "theta enclosure too wide for the fixed-point circle");
  }
  GridBracket t = FromEnclosure(table.theta());
  theta_lo_ = t.lo;
  theta_hi_ = t.hi;
}

GridBracket FixedCircle::FromEnclosure(const Enclosure& e) {
  BigInt m = GridModulus();
  return {ToGrid(Floor(e.lo * m)), ToGrid(Ceil(e.hi * m))};
}

GridBracket FixedCircle::Radius(const BigInt& n) const {
  auto it = radius_cache_.find(n);
  if (it != radius_cache_.end()) return it->second;
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "radius index must be >= 1");
  // floor(M n^(-u/v)) is the largest m with m^v n^u <= M^v.
  unsigned long u = tau_.num(), v = tau_.den();
  BigInt mv, nu;
  mpz_pow_ui(mv.get_mpz_t(), GridModulus().get_mpz_t(), v);
  mpz_pow_ui(nu.get_mpz_t(), n.get_mpz_t(), u);
  BigInt quotient = mv / nu;
  BigInt m = FloorRoot(quotient, v);
  BigInt check;
  mpz_pow_ui(check.get_mpz_t(), m.get_mpz_t(), v);
  bool exact = check * nu == mv;
  GridBracket r{ToGrid(m), ToGrid(exact ? m : BigInt(m + 1))};
  radius_cache_.emplace(n, r);
  return r;
}

bool FixedCircle::RadiusAtLeastHalf(const BigInt& n) const {
  // n^(-u/v) >= 1/2 iff n^u <= 2^v.
  BigInt nu, tv;
  mpz_pow_ui(nu.get_mpz_t(), n.get_mpz_t(), tau_.num());
  mpz_ui_pow_ui(tv.get_mpz_t(), 2, tau_.den());
  return nu <= tv;
}

Form FixedCircle::Orbit(int64_t i) {
  CheckCoefficient(i);
  return {i, 0, {}};
}

Form FixedCircle::Displacement(int j) const {
  const BigInt& q = table_->q(j);
  const BigInt& p = table_->p(j);
  if (q <= kMaxCoefficient && p <= kMaxCoefficient) {
    return {static_cast<int64_t>(q.get_si()), -static_cast<int64_t>(p.get_si()), {}};
  }
  GridBracket b = Norm(j);
  return {0, 0, ConvergentTable::Sign(j) > 0 ? b : -b};
}

GridBracket FixedCircle::Norm(int j) const {
  return FromEnclosure(table_->NormQk(j));
}

GridInt FixedCircle::Lower(const Form& f) const {
  CheckCoefficient(f.alpha);
  CheckCoefficient(f.beta);
  GridInt t = f.alpha >= 0 ? theta_lo_ : theta_hi_;
  return Mul(f.alpha, t) + Mul(f.beta, Modulus()) + f.rho.lo;
}

GridInt FixedCircle::Upper(const Form& f) const {
  CheckCoefficient(f.alpha);
  CheckCoefficient(f.beta);
  GridInt t = f.alpha >= 0 ? theta_hi_ : theta_lo_;
  return Mul(f.alpha, t) + Mul(f.beta, Modulus()) + f.rho.hi;
}

GridInt FixedCircle::Frac(GridInt x) const {
  GridInt m = Modulus();
  GridInt r = x % m;
  return r < 0 ? r + m : r;
}

GridSet FixedCircle::ArcOf(const Form& left, const Form& right,
                           Rounding mode) const {
  GridInt lo = mode == Rounding::kInner ? Upper(left) : Lower(left);
  GridInt hi = mode == Rounding::kInner ? Lower(right) : Upper(right);
  return RawArc(lo, hi);
}

GridSet FixedCircle::OrientedArc(int k, const Form& center, const Form& left,
                                 const Form& right, Rounding mode) const {
  if (k % 2 == 0) return ArcOf(center + (-left), center + right, mode);
  return ArcOf(center + (-right), center + left, mode);
}

GridSet FixedCircle::RawArc(GridInt lo, GridInt hi) const {
  GridInt m = Modulus();
  GridInt len = hi - lo;
  GridSet out;
  if (len <= 0) return out;
  if (len >= m) return FullSegments(m);
  GridInt start = Frac(lo);
  GridInt end = start + len;
  if (end <= m) {
    out.segs.emplace_back(start, end);
  } else {
    out.segs.emplace_back(GridInt(0), end - m);
    out.segs.emplace_back(start, m);
    out.zero_in = true;
  }
  return out;
}

GridSet FixedCircle::Ball(int64_t i, const GridBracket& radius,
                          Rounding mode) const {
  Form c = Orbit(i);
  Form r{0, 0, radius};
  return ArcOf(c + (-r), c + r, mode);
}

GridSet FixedCircle::UniteSegments(
    std::vector<std::pair<GridInt, GridInt>> segs, bool zero_in) {
  return Normalize(std::move(segs), zero_in);
}

GridSet FixedCircle::Gn(int64_t n, Rounding mode) const {
  GridBracket r = Radius(BigInt(static_cast<long>(n)));
  std::vector<std::pair<GridInt, GridInt>> segs;
  segs.reserve(2 * n);
  bool zero_in = false;
  for (int64_t i = 1; i <= n; ++i) {
    GridSet b = Ball(i, r, mode);
    if (b.zero_in && b.segs.size() == 1) return b;  // full circle
    zero_in = zero_in || b.zero_in;
    segs.insert(segs.end(), b.segs.begin(), b.segs.end());
  }
  return UniteSegments(std::move(segs), zero_in);
}

GridSet FixedCircle::Fk(int k, Rounding mode, int64_t budget) const {
  const BigInt& qk = table_->q(k);
  const BigInt& qk1 = table_->q(k + 1);
  if (qk1 > budget) {
    throw Error(ErrorKind::kOracleInfeasible,
                "q_{k+1} = " + dirichlet::ToString(qk1) + " exceeds oracle budget");
  }
  int64_t lo = qk.get_si() + 1, hi = qk1.get_si();
  // q_{k+1} = q_k happens only for k = 0 with a_1 = 1: no constraint.
  if (lo > hi) return FullSegments(Modulus());
  GridSet f = Gn(lo, mode);
  for (int64_t n = lo + 1; n <= hi && !f.segs.empty(); ++n) {
    f = Intersect(f, Gn(n, mode));
  }
  return f;
}

ArcSet FixedCircle::ToArcSet(const GridSet& g) {
  BigInt m = GridModulus();
  LinearSegments<Rational> s;
  s.zero_in = g.zero_in;
  for (const auto& [a, b] : g.segs) {
    Rational x(FromGrid(a), m), y(FromGrid(b), m);
    x.canonicalize();
    y.canonicalize();
    s.segs.emplace_back(x, y);
  }
  return ArcSet::FromSegments(std::move(s));
}

GridInt FixedCircle::FloorPoint(const Rational& y) {
  return ToGrid(Floor(y * GridModulus()));
}

}  // namespace dirichlet
