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

// Acceptance run: one PASS/FAIL line per criterion. A failure whose cause
// matches a documented infeasibility is marked "known" and does not change
// the exit status; any other failure exits 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dirichlet/continued_fraction.h"
#include "dirichlet/counting.h"
#include "dirichlet/dimension.h"
#include "dirichlet/error.h"
#include "dirichlet/level_set.h"
#include "dirichlet/tau_one.h"

namespace dirichlet {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  bool known = false;  // failure explained by a documented infeasibility
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double Mid(const Enclosure& e) { return ToDouble(e.Mid()); }

std::string Fixed(double x, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

PartialQuotientSource Src(const std::string& spec) { return PartialQuotientSource::Parse(spec); }

const std::vector<std::string> kThetas = {"golden", "rule:a_k=k", "target:w=2;seed=2,2",
                                          "target:w=3;seed=2,2", "periodic:1,2"};

// 1. Identities at depth 30 with enclosures narrower than 1e-20.
Verdict IdentitySuite() {
  constexpr int kDepth = 30;
  constexpr long kBitCap = 1L << 16;
  const Rational kWidth(1, BigInt("100000000000000000000"));
  Verdict v;
  Clock::time_point start = Clock::now();
  std::vector<std::string> infeasible, failed;
  for (const std::string& spec : kThetas) {
    PartialQuotientSource src = Src(spec);
    if (src.kind() == PartialQuotientSource::Kind::kExponentTargeting) {
      // q_{k+1} >= q_k^w: find how far the table fits under the bit cap.
      int d = 3;
      long bits = 0;
      for (; d <= kDepth + 3; ++d) {
        ConvergentTable t = ConvergentTable::Expand(src, d);
        bits = static_cast<long>(mpz_sizeinbase(t.q(d).get_mpz_t(), 2));
        if (bits > kBitCap) break;
      }
      ConvergentTable reached = ConvergentTable::Expand(src, d - 1);
      if (!reached.VerifyIdentities(d - 4).AllPass()) {
        failed.push_back(spec + " at depth " + std::to_string(d - 1));
      }
      if (d <= kDepth + 3) {
        double w = ToDouble(src.target_exponent());
        double log2_bits = std::log2(static_cast<double>(bits)) + (kDepth + 3 - d) * std::log2(w);
        infeasible.push_back(spec + ": q_" + std::to_string(d) + " already has " +
                             std::to_string(bits) + " bits, q_33 needs about 2^" +
                             Fixed(log2_bits, 1) + " bits (identities pass at depth " +
                             std::to_string(d - 1) + ")");
      }
      continue;
    }
    ConvergentTable t = ConvergentTable::ExpandForPrecision(src, kDepth + 3, 256);
    IdentityReport r = t.VerifyIdentities(kDepth);
    if (!r.AllPass() || r.max_width >= kWidth) {
      failed.push_back(spec + ": " + (r.AllPass() ? "width " + ToString(r.max_width) : r.first_failure));
    }
  }
  double secs = Seconds(start);
  std::ostringstream d;
  d << "checked k <= " << kDepth << " on " << kThetas.size() - infeasible.size()
    << " thetas in " << Fixed(secs, 2) << " s";
  for (const std::string& f : failed) d << "; FAILED " << f;
  for (const std::string& f : infeasible) d << "; infeasible " << f;
  v.pass = failed.empty() && infeasible.empty() && secs < 5;
  v.known = failed.empty() && !infeasible.empty() && secs < 5;
  v.detail = d.str();
  return v;
}

// Table with every q_{k+1} <= bound reachable and room for k + 2 < depth.
ConvergentTable OracleTable(const std::string& spec, const BigInt& bound) {
  PartialQuotientSource src = Src(spec);
  int d = 4;
  while (ConvergentTable::Expand(src, d).q(d - 3) <= bound) ++d;
  return ConvergentTable::ExpandForPrecision(src, d, 128, d + 200);
}

// 2. Constructions against the brute-force oracle.
Verdict OracleSandwich() {
  constexpr int64_t kBudget = 2000;
  Verdict v;
  Clock::time_point start = Clock::now();
  int levels = 0, inclusion_failures = 0, full_failures = 0, exact_levels = 0;
  int count_is_qk = 0, count_is_qk_plus_one = 0, count_other = 0, undecided = 0;
  for (const std::string& spec : kThetas) {
    ConvergentTable t = OracleTable(spec, kBudget);
    for (const char* ts : {"1/2", "3/4", "1", "3/2", "2"}) {
      LevelSetBuilder b(t, Tau::Parse(ts));
      for (int k = 0; k + 2 < t.depth() && t.q(k + 1) <= kBudget; ++k) {
        LevelSet s;
        try {
          s = b.Build(k);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kUndecidable) throw;
          ++undecided;
          continue;
        }
        ArcSet lo = b.FkOracle(k, Rounding::kInner, kBudget);
        ArcSet hi = b.FkOracle(k, Rounding::kOuter, kBudget);
        ++levels;
        if (!s.inner.IsSubsetOf(hi) || !lo.IsSubsetOf(s.outer)) ++inclusion_failures;
        if ((s.classification == Classification::kFullCircle) != lo.full()) ++full_failures;
        if (s.classification == Classification::kExactBallUnion) {
          ++exact_levels;
          BigInt n = lo.ComponentCount();
          if (n == t.q(k)) {
            ++count_is_qk;
          } else if (n == t.q(k) + 1) {
            ++count_is_qk_plus_one;
          } else {
            ++count_other;
          }
        }
      }
    }
  }
  double secs = Seconds(start);
  std::ostringstream d;
  d << levels << " levels in " << Fixed(secs, 1) << " s; inclusion failures "
    << inclusion_failures << "; full-circle mismatches " << full_failures << "; undecided "
    << undecided << "; ExactBallUnion levels " << exact_levels << " with oracle count q_k: "
    << count_is_qk << ", q_k + 1: " << count_is_qk_plus_one << ", other: " << count_other;
  bool core = inclusion_failures == 0 && full_failures == 0 && undecided == 0 && secs < 120;
  v.pass = core && count_is_qk == exact_levels;
  // The ball of index q_k + 1 lies apart from the first q_k balls, so the
  // exact union has q_k + 1 components, not q_k.
  v.known = core && count_other == 0 && count_is_qk == 0 && count_is_qk_plus_one > 0;
  if (v.known) d << " (the union is the q_k + 1 balls of G_{q_k+1}; the q_k clause cannot hold)";
  v.detail = d.str();
  return v;
}

// 3. Golden ratio: full circle at tau = 1, finite structure above.
Verdict GoldenExample() {
  constexpr int kMaxK = 25;
  constexpr int64_t kBudget = 2000;
  Verdict v;
  ConvergentTable t = ConvergentTable::ExpandForPrecision(Src("golden"), kMaxK + 3, 128);
  LevelSetBuilder one(t, Tau::Parse("1"));
  int certified = 0, oracle_full = 0, oracle_levels = 0;
  for (int k = 0; k <= kMaxK; ++k) {
    LevelSet s = one.Build(k);
    bool unit = std::find(s.certificates.begin(), s.certificates.end(), "unit-quotient") !=
                s.certificates.end();
    if (s.classification == Classification::kFullCircle && unit && s.inner.full()) ++certified;
    if (t.q(k + 1) <= kBudget) {
      ++oracle_levels;
      oracle_full += one.FkOracle(k, Rounding::kInner, kBudget).full();
    }
  }
  Tau super = Tau::Parse("3/2");
  LevelSetBuilder above(t, super);
  int exact_from = -1;
  for (int k = kMaxK; k >= 0 && above.Classify(k) == Classification::kExactBallUnion; --k) {
    exact_from = k;
  }
  Selection sel = SelectSubsequence(t, super, kMaxK);
  int last = sel.indices.empty() ? 0 : sel.indices.back();
  std::ostringstream d;
  d << "tau=1: unit-quotient certificate on " << certified << "/" << kMaxK + 1
    << " levels, oracle full on " << oracle_full << "/" << oracle_levels
    << "; tau=3/2: ExactBallUnion for k >= " << exact_from << ", last selected k = " << last
    << " of " << sel.last_k;
  v.pass = certified == kMaxK + 1 && oracle_full == oracle_levels && exact_from >= 0 &&
           exact_from < kMaxK - 5 && last + 5 < sel.last_k;
  v.detail = d.str();
  return v;
}

// 4. Exponent targeting at w = 2: running min by selection index 10.
Verdict ExponentTargetingExample() {
  Verdict v;
  Clock::time_point start = Clock::now();
  ConvergentTable t = ConvergentTable::ExpandForPrecision(Src("target:w=2;seed=2,2"), 14, 128);
  const double w = 2;
  std::ostringstream d;
  bool ok = true;
  for (const char* ts : {"3/4", "3/2"}) {
    Tau tau = Tau::Parse(ts);
    DimensionSeries s = SelectionSeries(t, tau, SelectSubsequence(t, tau));
    size_t pos = 0;
    while (pos + 1 < s.index.size() && s.index[pos] < 10) ++pos;
    double want = (w / ToDouble(tau.value()) - 1) / (w * w - 1);
    double got = Mid(s.running_min[pos]);
    ok = ok && s.index[pos] == 10 && std::fabs(got - want) <= 0.05;
    d << "tau=" << ts << ": running min " << Fixed(got) << " at k=" << s.index[pos]
      << " vs " << Fixed(want) << "; ";
  }
  double secs = Seconds(start);
  d << Fixed(secs, 2) << " s";
  v.pass = ok && secs < 30;
  v.detail = d.str();
  return v;
}

// 5. a_k = k at tau = 1.
Verdict IndexQuotientExample() {
  Verdict v;
  ConvergentTable t = ConvergentTable::ExpandForPrecision(Src("rule:a_k=k"), 42, 128);
  DimensionSeries cover = CoverRatioSeries(t, 40);
  DimensionSeries lower = TauOneLowerSeries(t);
  double c = Mid(cover.values.back());
  double l = lower.empty() ? 0 : Mid(lower.values.back());
  v.pass = cover.index.back() == 40 && std::fabs(c - 0.5) <= 0.02 && !lower.empty() &&
           lower.values.back().lo >= Rational(2, 5);
  v.detail = "cover ratio at k=40 " + Fixed(c) + ", lower series final " + Fixed(l) +
             " at k=" + std::to_string(lower.empty() ? 0 : lower.index.back());
  return v;
}

// 6. Series estimates inside the bracket in the estimated exponent.
Verdict ExponentBracket() {
  Verdict v;
  ConvergentTable t = ConvergentTable::ExpandForPrecision(Src("target:w=2;seed=2,2"), 14, 128);
  Enclosure w = t.EstimateExponent(10).running_max;
  std::ostringstream d;
  d << "w_hat in [" << Fixed(ToDouble(w.lo)) << ", " << Fixed(ToDouble(w.hi)) << "]";
  bool ok = true;
  for (const char* ts : {"3/4", "1", "3/2"}) {
    Tau tau = Tau::Parse(ts);
    auto a = ExponentBounds(w.lo, tau.value());
    auto b = ExponentBounds(w.hi, tau.value());
    Rational lower = std::min(a.first, b.first), upper = std::max(a.second, b.second);
    DimensionSeries s = tau.regime() == Tau::Regime::kOne
                            ? TauOneLowerSeries(t)
                            : SelectionSeries(t, tau, SelectSubsequence(t, tau));
    const Enclosure& e = s.estimate();
    bool in = e.lo >= lower - Rational(1, 20) && e.hi <= upper + Rational(1, 20);
    ok = ok && in;
    d << "; tau=" << ts << ": " << Fixed(Mid(e)) << " in [" << Fixed(ToDouble(lower)) << ", "
      << Fixed(ToDouble(upper)) << "] +- 0.05 " << (in ? "yes" : "no");
  }
  v.pass = ok;
  v.detail = d.str();
  return v;
}

// Brute-force count of digit windows for the nested interval count: first digit
// at most r~, second at most `second_cap`, then the Ostrowski rules.
BigInt EnumerateWindows(const ConvergentTable& t, int k, int l, const BigInt& first_cap,
                        const BigInt& second_cap) {
  BigInt count = 0;
  std::vector<BigInt> d(l + 1, 0);
  std::function<void(int)> walk = [&](int j) {
    if (j > l) {
      ++count;
      return;
    }
    BigInt top = t.a(k + j);
    if (j == 1) top = first_cap;
    if (j == 2) top = std::min(top, second_cap);
    for (BigInt c = 0; c <= top; ++c) {
      // c_j = a_j forces c_{j-1} = 0.
      if (j > 1 && c == t.a(k + j) && d[j - 1] != 0) continue;
      d[j] = c;
      walk(j + 1);
    }
  };
  walk(1);
  return count;
}

// 7. Ostrowski, subinterval counts, discrepancy and gap spectrum.
Verdict CountingSuite() {
  Verdict v;
  Clock::time_point start = Clock::now();
  std::ostringstream d;
  bool ok = true;

  for (const char* spec : {"golden", "rule:a_k=k"}) {
    ConvergentTable t = ConvergentTable::ExpandForPrecision(Src(spec), 12, 128);
    int K = 1;
    while (t.q(K) < 10000) ++K;
    std::set<std::vector<BigInt>> seen;
    bool valid = true;
    seen.insert(std::vector<BigInt>());  // n = 0
    for (long n = 1; n < t.q(K); ++n) {
      OstrowskiRep rep = Ostrowski(t, n);
      BigInt value = 0;
      for (size_t j = 0; j < rep.digits.size(); ++j) value += rep.digits[j] * t.q(static_cast<int>(j));
      valid = valid && rep.Valid(t) && value == n;
      std::vector<BigInt> digits = rep.digits;
      while (!digits.empty() && digits.back() == 0) digits.pop_back();
      seen.insert(digits);
    }
    // Valid windows of length K number q_K: the digit map is a bijection.
    BigInt windows = OstrowskiCount(t, 0, std::vector<BigInt>(K, t.q(K)));
    bool unique = valid && seen.size() == t.q(K) && windows == t.q(K);
    ok = ok && unique;
    d << spec << " n < q_" << K << " = " << t.q(K) << (unique ? " unique" : " NOT unique") << "; ";
  }

  std::mt19937_64 rng(2718);
  int window_instances = 0, window_mismatch = 0;
  for (int trial = 0; trial < 40 && window_instances < 12; ++trial) {
    std::string spec = "periodic:";
    for (int i = 0; i < 9; ++i) {
      long r = static_cast<long>(rng() % 10);
      long a = r < 5 ? 1 : r < 7 ? 2 : 3 + static_cast<long>(rng() % 6);
      spec += std::to_string(a) + (i < 8 ? "," : "|1,3");
    }
    ConvergentTable t = ConvergentTable::ExpandForPrecision(Src(spec), 16, 128);
    FixedCircle circle(t, Tau::Parse("1"));
    TauOne one(circle);
    std::vector<int> lambda;
    for (int k = 1; k + 3 < t.depth(); ++k) {
      if (one.InLambda(k)) lambda.push_back(k);
    }
    for (size_t j = 0; j + 1 < lambda.size(); ++j) {
      int k = lambda[j], l = lambda[j + 1] - k;
      SubintervalBound b;
      try {
        b = SubintervalCountBound(t, k, l);
      } catch (const Error&) {
        continue;
      }
      BigInt r = AdjustedRadiusMultiplier(t.a(k + 1), t.a(k + 2));
      BigInt brute = EnumerateWindows(t, k, l, r, b.pattern == 2 ? BigInt(1) : t.a(k + 2));
      ++window_instances;
      window_mismatch += brute != b.digit_count;
    }
  }
  ok = ok && window_instances >= 10 && window_mismatch == 0;
  d << "subinterval counts " << window_instances - window_mismatch << "/" << window_instances
    << " match enumeration; ";

  // a_k = k is left out here: q_12 is past the orbit scan limit.
  int dk_cases = 0, dk_fail = 0;
  for (const char* spec : {"golden", "periodic:1,2"}) {
    ConvergentTable t = ConvergentTable::ExpandForPrecision(Src(spec), 16, 128);
    for (int arc = 0; arc < 50; ++arc) {
      long den = 2 + static_cast<long>(rng() % 997);
      Rational a(static_cast<long>(rng() % den), den), b(static_cast<long>(rng() % den), den);
      a.canonicalize();
      b.canonicalize();
      ArcSet set = ArcSet::FromArc(a, b);
      for (int k = 1; k <= 12; ++k) {
        try {
          OrbitCount c = CountOrbit(t, k, set);
          ++dk_cases;
          Rational dev = c.count - c.expected;
          if (dev < 0) dev = -dev;
          dk_fail += dev > 2;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kUndecidable) throw;
        }
      }
    }
  }
  ok = ok && dk_fail == 0 && dk_cases >= 1000;
  d << "discrepancy " << dk_cases - dk_fail << "/" << dk_cases << " within 2; ";

  int gap_levels = 0, gap_fail = 0;
  for (const char* spec : {"golden", "periodic:1,2", "periodic:1,1,2|1"}) {
    ConvergentTable t = ConvergentTable::ExpandForPrecision(Src(spec), 18, 128);
    for (int k = 1; k <= 15; ++k) {
      GapSpectrum g = ThreeDistance(t, k);
      std::set<std::pair<Rational, Rational>> distinct;
      bool match = g.pairing_ok;
      for (const Enclosure& e : g.gaps) {
        match = match && (e.Overlaps(g.short_gap) || e.Overlaps(g.long_gap));
        distinct.insert({e.lo, e.hi});
      }
      ++gap_levels;
      gap_fail += !match || g.short_count + g.long_count != static_cast<int64_t>(g.gaps.size());
    }
  }
  ok = ok && gap_fail == 0;
  d << "gap spectra " << gap_levels - gap_fail << "/" << gap_levels << " two-valued; ";

  double secs = Seconds(start);
  d << Fixed(secs, 1) << " s";
  v.pass = ok && secs < 60;
  v.detail = d.str();
  return v;
}

// 8. Every n <= 1e4 with ||n theta|| < 1/(2n) is a convergent denominator.
Verdict LegendreSuite() {
  Verdict v;
  std::ostringstream d;
  bool ok = true;
  for (const char* spec : {"golden", "rule:a_k=k"}) {
    ConvergentTable t = ConvergentTable::ExpandForPrecision(Src(spec), 30, 128);
    std::vector<LegendreHit> hits = LegendreScan(t, 10000);
    int exceptions = 0;
    for (const LegendreHit& h : hits) exceptions += !h.is_convergent;
    ok = ok && exceptions == 0 && !hits.empty();
    d << spec << ": " << hits.size() << " hits, " << exceptions << " exceptions; ";
  }
  v.pass = ok;
  v.detail = d.str();
  return v;
}

// 9. Optimized upper bound above tau = 1.
Verdict OptimizedBoundSuite() {
  Verdict v;
  OptimizedBound exact = OptimizedUpper(Rational(5, 4));
  bool point = exact.value.IsPoint() && exact.value.lo == Rational(1, 5);
  std::mt19937_64 rng(9);
  int below = 0;
  for (int i = 0; i < 50; ++i) {
    long den = 1 + static_cast<long>(rng() % 1000);
    long num = den + 1 + static_cast<long>(rng() % (9 * den));
    Rational tau(num, den);
    tau.canonicalize();
    below += OptimizedUpper(tau).below_half_tau_squared;
  }
  v.pass = point && below == 50;
  v.detail = std::string("optimized upper bound at 5/4 = ") + exact.value.ToString() + ", " +
             std::to_string(below) + "/50 random tau below 1/(2 tau^2)";
  return v;
}

// 10. Advisory sweep.
Verdict SweepSuite() {
  Verdict v;
  ConvergentTable t = ConvergentTable::ExpandForPrecision(Src("target:w=2;seed=2,2"), 14, 128);
  std::vector<Rational> grid;
  for (int i = 12; i <= 18; ++i) grid.push_back(Rational(i, 20));
  for (int i = 23; i <= 37; ++i) grid.push_back(Rational(i, 20));
  std::vector<SweepPoint> pts = TauSweep(t, grid, 2);
  int monotone = 0, within = 0;
  for (const SweepPoint& p : pts) {
    monotone += p.monotone;
    within += p.within_modulus;
  }
  int n = static_cast<int>(pts.size());
  v.pass = monotone == n && within == n;
  v.known = true;  // advisory: reported, never fatal
  v.detail = std::to_string(n) + " grid points, monotone " + std::to_string(monotone) +
             ", within 2x modulus " + std::to_string(within) + " (advisory)";
  return v;
}

}  // namespace
}  // namespace dirichlet

int main() {
  using dirichlet::Verdict;
  struct Criterion {
    const char* name;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {"identity suite", dirichlet::IdentitySuite},
      {"oracle sandwich", dirichlet::OracleSandwich},
      {"golden ratio example", dirichlet::GoldenExample},
      {"exponent targeting example", dirichlet::ExponentTargetingExample},
      {"a_k = k example", dirichlet::IndexQuotientExample},
      {"exponent bracket", dirichlet::ExponentBracket},
      {"counting suite", dirichlet::CountingSuite},
      {"Legendre scan", dirichlet::LegendreSuite},
      {"optimized upper bound", dirichlet::OptimizedBoundSuite},
      {"tau sweep", dirichlet::SweepSuite},
  };
  int unexpected = 0, i = 0;
  for (const Criterion& c : criteria) {
    ++i;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.detail = std::string("error: ") + e.what();
    }
    const char* tag = v.pass ? "PASS" : (v.known ? "FAIL (known)" : "FAIL");
    std::cout << "[" << tag << "] " << i << ". " << c.name << ": " << v.detail << std::endl;
    unexpected += !v.pass && !v.known;
  }
  return unexpected == 0 ? 0 : 1;
}
