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
#include "dirichlet/counting.h"

#include <algorithm>
#include <numeric>

#include "dirichlet/error.h"
#include "dirichlet/tau_one.h"

namespace dirichlet {
namespace {

int64_t ScanLength(const BigInt& n) {
  if (n > kMaxOrbitScan) {
    throw Error(ErrorKind::kOracleInfeasible,
                "scan of " + ToString(n) + " orbit points is over budget");
  }
  return n.get_si();
}

bool InLambda(const ConvergentTable& t, int k) {
  return t.a(k + 1) >= 3 || t.a(k + 2) == 2;
}

}  // namespace

GapSpectrum ThreeDistance(const ConvergentTable& table, int k) {
  if (k < 0 || k + 1 >= table.depth()) {
    throw Error(ErrorKind::kInsufficientDepth, "three distance needs k + 1 < depth");
  }
  GapSpectrum out;
  out.k = k;
  out.short_gap = table.NormQk(k - 1);
  out.long_gap = table.NormQk(k - 1) + table.NormQk(k);
  int64_t n = ScanLength(table.q(k));
  int64_t prev_q = table.q(k - 1).get_si();
  std::vector<Enclosure> pts(n + 1);
  for (int64_t i = 1; i <= n; ++i) pts[i] = table.OrbitPoint(i);
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 1);
  std::sort(out.order.begin(), out.order.end(),
            [&](int64_t a, int64_t b) { return pts[a].lo < pts[b].lo; });
  for (int64_t s = 0; s < n; ++s) {
    const Enclosure& cur = pts[out.order[s]];
    Enclosure next = s + 1 < n ? pts[out.order[s + 1]] : pts[out.order[0]] + Rational(1);
    if (n > 1 && !(cur.hi < next.lo)) {
      throw Error(ErrorKind::kUndecidable, "orbit points cannot be ordered");
    }
    Enclosure gap(next.lo - cur.hi, next.hi - cur.lo);
    bool is_short = gap.Overlaps(out.short_gap);
    bool is_long = gap.Overlaps(out.long_gap);
    if (is_short == is_long) {
      throw Error(is_short ? ErrorKind::kUndecidable : ErrorKind::kInvariantViolation,
                  "gap matches " + std::string(is_short ? "both" : "neither") +
                      " admissible lengths");
    }
    (is_short ? out.short_count : out.long_count)++;
    out.gaps.push_back(gap);
  }
  std::vector<int64_t> succ(n + 1);
  for (int64_t s = 0; s < n; ++s) succ[out.order[s]] = out.order[(s + 1) % n];
  for (int64_t i = 1; i <= n; ++i) {
    int64_t partner = i > prev_q ? i - prev_q : i + n - prev_q;
    bool ok = k % 2 == 0 ? succ[i] == partner : succ[partner] == i;
    out.pairing_ok = out.pairing_ok && ok;
  }
  return out;
}

bool OstrowskiRep::Valid(const ConvergentTable& table) const {
  if (digits.empty() || static_cast<int>(digits.size()) > table.depth()) return false;
  BigInt sum = 0;
  for (size_t j = 0; j < digits.size(); ++j) {
    const BigInt& a = table.a(static_cast<int>(j) + 1);
    if (digits[j] < 0 || digits[j] > a) return false;
    if (j == 0 && digits[0] == a) return false;
    if (j > 0 && digits[j] == a && digits[j - 1] != 0) return false;
    sum += digits[j] * table.q(static_cast<int>(j));
  }
  return sum == n;
}

OstrowskiRep Ostrowski(const ConvergentTable& table, const BigInt& n) {
  if (n < 1 || n >= table.q(table.depth())) {
    throw Error(ErrorKind::kInvalidArgument, "Ostrowski expansion needs 1 <= n < q_K");
  }
  int top = 0;
  while (table.q(top + 1) <= n) ++top;
  OstrowskiRep rep{n, std::vector<BigInt>(top + 1)};
  BigInt rest = n;
  for (int j = top; j >= 0; --j) {
    rep.digits[j] = rest / table.q(j);
    rest -= rep.digits[j] * table.q(j);
  }
  if (!rep.Valid(table)) {
    throw Error(ErrorKind::kInvariantViolation, "greedy expansion broke the digit rules");
  }
  return rep;
}

BigInt OstrowskiCount(const ConvergentTable& table, int k,
                      const std::vector<BigInt>& upper) {
  int len = static_cast<int>(upper.size());
  if (k < 0 || len < 1 || k + len > table.depth()) {
    throw Error(ErrorKind::kInvalidArgument, "digit window outside the table");
  }
  // From the top digit down: a digit at its maximum a_{j+1} forces the next
  // lower one to vanish.
  BigInt free = 1, at_max = 0;
  for (int j = k + len - 1; j >= k; --j) {
    const BigInt& a = table.a(j + 1);
    BigInt m = std::min(upper[j - k], j == 0 ? BigInt(a - 1) : a);
    if (m < 0) return 0;
    BigInt full = m == a ? 1 : 0;
    BigInt next_at_max = free * full;
    free = free * (m + 1 - full) + at_max;
    at_max = next_at_max;
  }
  return free + at_max;
}

BigInt Fibonacci(int n) {
  BigInt r;
  mpz_fib_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

OrbitCount CountOrbit(const ConvergentTable& table, int k, const ArcSet& set) {
  if (k < 0 || k > table.depth()) {
    throw Error(ErrorKind::kInsufficientDepth, "level beyond table depth");
  }
  int64_t n = ScanLength(table.q(k));
  std::vector<Rational> ends;
  for (const Arc& arc : set.arcs()) {
    ends.push_back(arc.start);
    ends.push_back(arc.end);
  }
  OrbitCount out;
  out.count = 0;
  for (int64_t i = 1; i <= n; ++i) {
    Enclosure p = table.OrbitPoint(i);
    for (const Rational& e : ends) {
      if (p.Contains(e) || p.Contains(e + 1)) {
        throw Error(ErrorKind::kUndecidable, "orbit point " + std::to_string(i) +
                                                 " straddles an arc endpoint");
      }
    }
    if (set.Contains(p.lo)) ++out.count;
  }
  out.expected = Rational(table.q(k)) * set.Measure();
  out.variation = set.full() ? 0 : 2 * set.ComponentCount();
  Rational diff = abs(Rational(out.count) - out.expected);
  out.within_bound = diff <= out.variation;
  return out;
}

SubintervalBound SubintervalCountBound(const ConvergentTable& table, int k, int l) {
  if (k < 0 || l < 1 || k + l + 2 > table.depth()) {
    throw Error(ErrorKind::kInvalidArgument, "levels outside the table");
  }
  if (!InLambda(table, k) || !InLambda(table, k + l)) {
    throw Error(ErrorKind::kInvalidArgument, "both levels must be in Lambda");
  }
  for (int j = k + 1; j < k + l; ++j) {
    if (InLambda(table, j)) {
      throw Error(ErrorKind::kInvalidArgument, "an intermediate level is in Lambda");
    }
  }
  auto ones_from = [&](int lo) {
    for (int j = lo; j <= k + l; ++j) {
      if (table.a(j) != 1) return false;
    }
    return true;
  };
  SubintervalBound out;
  // With a_{k+1} = 1 and a_{k+2} = 2 a single step holds only one interval,
  // so the weaker second bound applies even when l = 1.
  bool second = table.a(k + 2) == 2 && (l > 1 || table.a(k + 1) == 1);
  if (!second && !ones_from(k + 2)) {
    throw Error(ErrorKind::kInvalidArgument, "quotient pattern not covered");
  }
  if (second && !ones_from(k + 3)) {
    throw Error(ErrorKind::kInvalidArgument, "quotient pattern not covered");
  }
  out.pattern = second ? 2 : 1;
  BigInt r = AdjustedRadiusMultiplier(table.a(k + 1), table.a(k + 2));
  out.digit_count = second ? BigInt(Fibonacci(l + 1) * (r + 1))
                           : BigInt(Fibonacci(l) * r + Fibonacci(l + 1));
  const BigInt& qk = table.q(k);
  Rational ratio(qk, table.q(second ? k + 2 : k + 1));
  ratio.canonicalize();
  Rational scale(table.q(k + l), qk);
  scale.canonicalize();
  out.bound = scale * Power(ratio, Rational(1, 2));
  out.count_meets_bound = out.digit_count >= out.bound.hi;
  return out;
}

std::vector<LegendreHit> LegendreScan(const ConvergentTable& table, const BigInt& N) {
  if (N > table.q(table.depth())) {
    throw Error(ErrorKind::kInsufficientDepth, "scan bound exceeds q_K");
  }
  int64_t limit = ScanLength(N);
  std::vector<LegendreHit> out;
  for (int64_t n = 1; n <= limit; ++n) {
    Enclosure norm = table.NormN(n);
    Rational bound(1, 2 * n);
    if (norm.lo >= bound) continue;
    if (!(norm.hi < bound)) {
      throw Error(ErrorKind::kUndecidable, "Legendre test undecidable at n = " +
                                               std::to_string(n));
    }
    Enclosure x = Rational(n) * table.theta();
    BigInt p = Floor(x.Mid() + Rational(1, 2));
    BigInt g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), BigInt(n).get_mpz_t());
    BigInt q = n / g;
    int j = 0;
    while (table.q(j) < q) ++j;
    if (table.q(j) != q) {
      throw Error(ErrorKind::kInvariantViolation,
                  std::to_string(n) + " passed the test but " + ToString(q) +
                      " is not a convergent denominator");
    }
    out.push_back({n, j, g == 1});
  }
  return out;
}

}  // namespace dirichlet
