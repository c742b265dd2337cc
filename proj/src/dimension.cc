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
#include "dirichlet/dimension.h"

#include <algorithm>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

Rational PowQ(const Rational& x, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return r;
}

Enclosure Div(const Enclosure& a, const Enclosure& b) { return a / b; }

Enclosure Point(const Rational& q) { return Enclosure::Point(q); }

// Last index with a usable norm enclosure.
int DefaultMaxK(const ConvergentTable& t, int max_k, int reserve) {
  int top = t.depth() - reserve;
  return max_k < 0 ? top : std::min(max_k, top);
}

}  // namespace

void DimensionSeries::Push(int i, const Enclosure& v) {
  index.push_back(i);
  values.push_back(v);
  if (running_min.empty()) {
    running_min.push_back(v);
  } else {
    const Enclosure& m = running_min.back();
    running_min.push_back(Enclosure(std::min(m.lo, v.lo), std::min(m.hi, v.hi)));
  }
}

const char* SeriesKindName(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::kSelectionSub:
      return "selection-sub";
    case SeriesKind::kSelectionSuper:
      return "selection-super";
    case SeriesKind::kExponentSub:
      return "exponent-sub";
    case SeriesKind::kExponentSuper:
      return "exponent-super";
    case SeriesKind::kTauOneLower:
      return "tau-one-lower";
    case SeriesKind::kCoverRatio:
      return "cover-ratio";
    case SeriesKind::kFalconerLower:
      return "falconer-lower";
    case SeriesKind::kFalconerUpper:
      return "falconer-upper";
  }
  return "?";
}

Selection SelectSubsequence(const ConvergentTable& table, const Tau& tau, int max_k) {
  if (tau.regime() == Tau::Regime::kOne) {
    throw Error(ErrorKind::kInvalidArgument, "tau = 1 has no subsequence formula");
  }
  bool sub = tau.regime() == Tau::Regime::kSub;
  unsigned long u = tau.num(), v = tau.den();
  Selection out;
  out.tau = tau.value();
  out.last_k = DefaultMaxK(table, max_k, 3);
  for (int k = 1; k <= out.last_k; ++k) {
    const Enclosure& norm = table.NormQk(k);
    // tau < 1: q^v ||q||^u < 1. tau > 1: q^u ||q||^v < 2^v. Tried first on
    // 96-bit roundings, then exactly.
    unsigned long qe = sub ? v : u, ne = sub ? u : v;
    Rational limit = sub ? Rational(1) : PowQ(Rational(2), v);
    std::optional<bool> in;
    for (int bits : {96, 0}) {
      Enclosure q = Enclosure::Point(Rational(table.q(k)));
      Enclosure n = norm;
      if (bits > 0) {
        q = Coarsen(q, bits);
        n = Coarsen(n, bits);
      }
      if (PowQ(q.hi, qe) * PowQ(n.hi, ne) < limit) {
        in = true;
      } else if (PowQ(q.lo, qe) * PowQ(n.lo, ne) >= limit) {
        in = false;
      }
      if (in) break;
    }
    if (!in) {
      throw Error(ErrorKind::kUndecidable,
                  "selection condition undecidable at k = " + std::to_string(k));
    }
    if (!*in) continue;
    out.indices.push_back(k);
    Enclosure lq = Log(table.q(k)), ln = Log(norm);
    out.log_condition.push_back(sub ? lq + tau.value() * ln : tau.value() * lq + ln);
  }
  return out;
}

DimensionSeries SelectionSeries(const ConvergentTable& table, const Tau& tau,
                               const Selection& sel) {
  if (sel.indices.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "selection needs at least two indices");
  }
  if (tau.regime() == Tau::Regime::kOne) {
    throw Error(ErrorKind::kInvalidArgument, "tau = 1 has no subsequence formula");
  }
  bool sub = tau.regime() == Tau::Regime::kSub;
  Rational inv = 1 / tau.value();
  DimensionSeries out;
  out.kind = sub ? SeriesKind::kSelectionSub : SeriesKind::kSelectionSuper;
  Enclosure prefix = Point(0);
  for (size_t i = 0; i < sel.indices.size(); ++i) {
    int k = sel.indices[i];
    Enclosure lq = Log(table.q(k)), ln = Log(table.NormQk(k));
    if (i > 0) {
      Enclosure num = sub ? (inv + 1) * lq + prefix : -prefix;
      out.Push(k, Div(num, lq - ln));
    }
    prefix = sub ? prefix + inv * lq + ln : prefix + lq + inv * ln;
  }
  return out;
}

std::vector<Enclosure> ExponentSequence(const ConvergentTable& table,
                                        const Selection& sel,
                                        std::optional<Rational> exponent) {
  std::vector<Enclosure> w;
  Enclosure log2 = Log(BigInt(2));
  for (int k : sel.indices) {
    if (table.q(k) < 2) {
      throw Error(ErrorKind::kInvalidArgument, "exponent needs q_k >= 2");
    }
    Enclosure shift = exponent ? (*exponent + 1) * log2 : log2;
    w.push_back(Div(shift + Log(table.q(k + 1)), Log(table.q(k))));
  }
  return w;
}

std::vector<Enclosure> TelescopedSums(const std::vector<Enclosure>& w) {
  std::vector<Enclosure> s;
  Enclosure prev = Point(0);
  for (const Enclosure& wi : w) {
    prev = Div(prev + Rational(1), wi);
    s.push_back(prev);
  }
  return s;
}

DimensionSeries ExponentSeries(const ConvergentTable& table, const Tau& tau,
                               const Selection& sel, const Rational& exponent) {
  if (sel.indices.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "selection needs at least two indices");
  }
  bool sub = tau.regime() == Tau::Regime::kSub;
  if (tau.regime() == Tau::Regime::kOne) {
    throw Error(ErrorKind::kInvalidArgument, "tau = 1 has no subsequence formula");
  }
  std::vector<Enclosure> w =
      ExponentSequence(table, sel, sub ? std::nullopt : std::optional<Rational>(exponent));
  Rational inv = 1 / tau.value();
  DimensionSeries out;
  out.kind = sub ? SeriesKind::kExponentSub : SeriesKind::kExponentSuper;
  std::vector<Enclosure> logs;
  for (int k : sel.indices) logs.push_back(Log(table.q(k)));
  for (size_t i = 1; i < sel.indices.size(); ++i) {
    Enclosure sum = Point(0);
    for (size_t j = 0; j < i; ++j) {
      Enclosure coeff = sub ? w[j] + Rational(-inv) : inv * w[j] + Rational(-1);
      sum = sum + coeff * Div(logs[j], logs[i]);
    }
    Enclosure denom = w[i] + Rational(1);
    Enclosure v = sub ? Div(Point(inv + 1) - sum, denom) : Div(sum, denom);
    out.Push(sel.indices[i], v);
  }
  return out;
}

std::pair<Rational, Rational> ExponentBounds(const std::optional<Rational>& w,
                                             const Rational& tau) {
  if (tau <= 0) throw Error(ErrorKind::kInvalidArgument, "tau must be positive");
  if (!w) return {0, 0};
  const Rational& x = *w;
  if (x < 1) throw Error(ErrorKind::kInvalidArgument, "exponent must be >= 1");
  if (tau * x < 1 || tau > x) {
    throw Error(ErrorKind::kInvalidArgument, "tau outside [1/w, w]");
  }
  if (x == 1) return {Rational(1, 2), Rational(1)};
  Rational mid = (x / tau - 1) / (x * x - 1);
  if (tau <= 1) return {mid, (1 / tau + 1) / (x + 1)};
  return {Rational(0), mid};
}

OptimizedBound OptimizedUpper(const Rational& tau) {
  if (tau <= 1) throw Error(ErrorKind::kInvalidArgument, "needs tau > 1");
  OptimizedBound out;
  out.optimal_w = Power(tau * tau - 1, Rational(1, 2)) + tau;
  out.value = Point(1) / (Rational(2 * tau) * out.optimal_w);
  out.below_half_tau_squared = out.value.hi < 1 / (2 * tau * tau);
  return out;
}

DimensionSeries FalconerLower(const std::vector<BigInt>& m,
                              const std::vector<Rational>& eps) {
  if (m.size() != eps.size()) {
    throw Error(ErrorKind::kInvalidArgument, "counts and gaps differ in length");
  }
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1 || eps[i] <= 0) {
      throw Error(ErrorKind::kInvalidArgument, "counts must be >= 1, gaps positive");
    }
    if (i > 0 && eps[i] > eps[i - 1]) {
      throw Error(ErrorKind::kInvalidArgument, "gaps must be non-increasing");
    }
  }
  DimensionSeries out;
  out.kind = SeriesKind::kFalconerLower;
  Enclosure num = Point(0);
  for (size_t i = 0; i < m.size(); ++i) {
    if (i > 0) {
      Rational me = Rational(m[i]) * eps[i];
      if (me >= 1) throw Error(ErrorKind::kInvalidArgument, "needs m_i eps_i < 1");
      out.Push(static_cast<int>(i) + 1, Div(num, -Log(me)));
    }
    num = num + Log(m[i]);
  }
  return out;
}

DimensionSeries FalconerUpper(const std::vector<BigInt>& l,
                              const std::vector<Rational>& delta) {
  if (l.size() != delta.size()) {
    throw Error(ErrorKind::kInvalidArgument, "counts and diameters differ in length");
  }
  DimensionSeries out;
  out.kind = SeriesKind::kFalconerUpper;
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 1 || delta[i] <= 0 || delta[i] >= 1) {
      throw Error(ErrorKind::kInvalidArgument, "needs l_i >= 1 and 0 < delta_i < 1");
    }
    out.Push(static_cast<int>(i) + 1, Div(Log(l[i]), -Log(delta[i])));
  }
  return out;
}

DimensionSeries TauOneLowerSeries(const ConvergentTable& table, int max_k) {
  int top = DefaultMaxK(table, max_k, 2);
  std::vector<int> lambda;
  for (int k = 1; k <= top; ++k) {
    if (table.a(k + 1) >= 3 || table.a(k + 2) == 2) lambda.push_back(k);
  }
  DimensionSeries out;
  out.kind = SeriesKind::kTauOneLower;
  if (lambda.size() < 2) {
    out.note = "Lambda has fewer than two indices up to k = " + std::to_string(top) +
               "; F_k is the circle at the remaining levels";
    return out;
  }
  std::vector<Enclosure> lq(lambda.back() + 1);
  for (int k = 0; k <= lambda.back(); ++k) lq[k] = Log(table.q(k));
  // Logs of q_{k+1}/q_k over the steps with a_{k+1} = 1.
  auto unit_steps = [&](int from, int to) {
    Enclosure s = Point(0);
    for (int k = from; k < to; ++k) {
      if (table.a(k + 1) == 1) s = s + (lq[k + 1] - lq[k]);
    }
    return s;
  };
  for (size_t i = 0; i + 1 < lambda.size(); ++i) {
    int k = lambda[i], next = lambda[i + 1];
    Enclosure num = lq[k] + unit_steps(1, k);
    Enclosure den = lq[k] + lq[next] - unit_steps(k, next);
    out.Push(k, Div(num, den));
  }
  return out;
}

DimensionSeries CoverRatioSeries(const ConvergentTable& table, int max_k) {
  int top = DefaultMaxK(table, max_k, 1);
  DimensionSeries out;
  out.kind = SeriesKind::kCoverRatio;
  for (int k = 1; k <= top; ++k) {
    if (table.q(k) < 2) continue;
    Enclosure a = Log(table.q(k));
    out.Push(k, Div(a, a + Log(table.q(k + 1))));
  }
  return out;
}

std::vector<SweepPoint> TauSweep(const ConvergentTable& table,
                                 const std::vector<Rational>& grid,
                                 const Rational& exponent, int max_k) {
  std::vector<Rational> taus = grid;
  std::sort(taus.begin(), taus.end());
  std::vector<SweepPoint> out;
  const SweepPoint* prev = nullptr;
  for (const Rational& t : taus) {
    SweepPoint p;
    p.tau = t;
    Tau tau(t);
    if (tau.regime() == Tau::Regime::kOne) {
      p.route = "tau-one";
      DimensionSeries s = TauOneLowerSeries(table, max_k);
      if (!s.empty()) p.estimate = s.values.back();
      out.push_back(p);
      prev = nullptr;
      continue;
    }
    p.route = tau.regime() == Tau::Regime::kSub ? "sub" : "super";
    try {
      Selection sel = SelectSubsequence(table, tau, max_k);
      if (sel.indices.size() < 2) {
        p.route = "hypothesis-not-met";
      } else {
        p.estimate = SelectionSeries(table, tau, sel).estimate();
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndecidable) throw;
      p.route = "undecidable";
    }
    bool same_side = prev && (prev->tau < 1) == (t < 1);
    if (p.estimate && same_side && prev->estimate) {
      const Rational& s = prev->tau;
      p.increment = *p.estimate - *prev->estimate;
      Rational mod = t < 1 ? Rational((t - s) / (s * (1 - t * t)))
                           : Rational((t - s) * exponent / (s * t * (s * s - 1)));
      p.modulus = Point(mod);
      p.monotone = !(p.increment->lo > 0);
      Rational smallest = p.increment->lo > 0    ? p.increment->lo
                          : p.increment->hi < 0  ? Rational(-p.increment->hi)
                                                 : Rational(0);
      p.within_modulus = smallest <= 2 * mod;
    }
    out.push_back(p);
    prev = &out.back();
  }
  return out;
}

}  // namespace dirichlet
