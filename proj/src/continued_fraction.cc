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

#include "dirichlet/continued_fraction.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

std::vector<BigInt> ParseIntList(const std::string& text) {
  std::vector<BigInt> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational r = ParseRational(item);
    if (r.get_den() != 1 || r < 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "partial quotients must be integers >= 1, got '" + item + "'");
    }
    out.push_back(r.get_num());
  }
  return out;
}

std::string JoinList(const std::vector<BigInt>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s;
}

void CheckPositive(const std::vector<BigInt>& v) {
  for (const BigInt& x : v) {
    if (x < 1) {
      throw Error(ErrorKind::kInvalidArgument, "partial quotient below 1");
    }
  }
}

// Least t with t >= q^w, w = u/v.
BigInt TargetPower(const BigInt& q, const Rational& w) {
  return CeilRationalPower(q, w.get_num().get_ui(), w.get_den().get_ui());
}

BigInt TargetedQuotient(const BigInt& q_prev, const BigInt& q,
                        const Rational& w) {
  BigInt t = TargetPower(q, w);
  BigInt num = t - q_prev;
  BigInt a;
  mpz_cdiv_q(a.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  return a < 1 ? BigInt(1) : a;
}

// Parses "key=value;key=value".
std::vector<std::pair<std::string, std::string>> ParseOptions(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "expected key=value in '" + item + "'");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

}  // namespace

PartialQuotientSource PartialQuotientSource::ExplicitList(std::vector<BigInt> a) {
  CheckPositive(a);
  PartialQuotientSource s;
  s.kind_ = Kind::kExplicitList;
  s.list_ = std::move(a);
  return s;
}

PartialQuotientSource PartialQuotientSource::EventuallyPeriodic(
    std::vector<BigInt> pre, std::vector<BigInt> period) {
  CheckPositive(pre);
  CheckPositive(period);
  if (period.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty period");
  }
  PartialQuotientSource s;
  s.kind_ = Kind::kEventuallyPeriodic;
  s.list_ = std::move(pre);
  s.period_ = std::move(period);
  return s;
}

PartialQuotientSource PartialQuotientSource::Constant(const BigInt& c) {
  if (c < 1) throw Error(ErrorKind::kInvalidArgument, "constant quotient below 1");
  PartialQuotientSource s;
  s.kind_ = Kind::kConstant;
  s.constant_ = c;
  return s;
}

PartialQuotientSource PartialQuotientSource::Index() {
  PartialQuotientSource s;
  s.kind_ = Kind::kIndex;
  return s;
}

PartialQuotientSource PartialQuotientSource::ExponentTargeting(
    const Rational& w, std::vector<BigInt> seeds) {
  if (w <= 1) throw Error(ErrorKind::kInvalidArgument, "target exponent must exceed 1");
  CheckPositive(seeds);
  PartialQuotientSource s;
  s.kind_ = Kind::kExponentTargeting;
  s.w_ = w;
  s.list_ = std::move(seeds);
  return s;
}

PartialQuotientSource PartialQuotientSource::SpikedOnes(
    const Rational& w, std::vector<BigInt> seeds) {
  PartialQuotientSource s = ExponentTargeting(w, std::move(seeds));
  s.kind_ = Kind::kSpikedOnes;
  return s;
}

PartialQuotientSource PartialQuotientSource::Parse(const std::string& spec) {
  if (spec == "golden") return Golden();
  size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "unknown theta source '" + spec + "'");
  }
  std::string head = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (head == "list") return ExplicitList(ParseIntList(body));
  if (head == "periodic") {
    size_t bar = body.find('|');
    if (bar == std::string::npos) return EventuallyPeriodic({}, ParseIntList(body));
    return EventuallyPeriodic(ParseIntList(body.substr(0, bar)),
                              ParseIntList(body.substr(bar + 1)));
  }
  if (head == "rule") {
    if (body == "a_k=k") return Index();
    if (body.rfind("a_k=", 0) == 0) {
      std::vector<BigInt> c = ParseIntList(body.substr(4));
      if (c.size() == 1) return Constant(c[0]);
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown rule '" + body + "'");
  }
  if (head == "target" || head == "example2") {
    Rational w = 0;
    std::vector<BigInt> seeds = {2, 2};
    for (const auto& [key, value] : ParseOptions(body)) {
      if (key == "w") {
        w = ParseRational(value);
      } else if (key == "seed") {
        seeds = ParseIntList(value);
      } else {
        throw Error(ErrorKind::kInvalidArgument, "unknown option '" + key + "'");
      }
    }
    return head == "target" ? ExponentTargeting(w, seeds) : SpikedOnes(w, seeds);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown theta source '" + spec + "'");
}

std::vector<BigInt> PartialQuotientSource::Generate(int K) const {
  if (K < 0) throw Error(ErrorKind::kInvalidArgument, "negative length");
  std::vector<BigInt> out;
  out.reserve(K);
  switch (kind_) {
    case Kind::kExplicitList:
      if (static_cast<int>(list_.size()) < K) {
        throw Error(ErrorKind::kInsufficientQuotients,
                    "insufficient quotients: source has " +
                        std::to_string(list_.size()) + ", need " +
                        std::to_string(K));
      }
      out.assign(list_.begin(), list_.begin() + K);
      return out;
    case Kind::kEventuallyPeriodic:
      for (int k = 0; k < K; ++k) {
        if (k < static_cast<int>(list_.size())) {
          out.push_back(list_[k]);
        } else {
          out.push_back(period_[(k - list_.size()) % period_.size()]);
        }
      }
      return out;
    case Kind::kConstant:
      out.assign(K, constant_);
      return out;
    case Kind::kIndex:
      for (int k = 1; k <= K; ++k) out.push_back(BigInt(k));
      return out;
    case Kind::kExponentTargeting:
    case Kind::kSpikedOnes:
      break;
  }
  // Both targeting variants walk the recurrence; n is the index whose q_n
  // decides a_{n+1}.
  BigInt q_prev = 0, q = 1;
  const int seeds = static_cast<int>(list_.size());
  int spike_round = 1;  // i of the last spike k_i
  int last_spike = -1;
  BigInt threshold;
  for (int n = 0; n < K; ++n) {
    BigInt a;
    if (n < seeds) {
      a = list_[n];
    } else if (kind_ == Kind::kExponentTargeting) {
      a = TargetedQuotient(q_prev, q, w_);
    } else if (n == seeds) {
      a = TargetedQuotient(q_prev, q, w_);
      last_spike = n;
    } else if (n > last_spike + 1 && q > threshold) {
      a = TargetedQuotient(q_prev, q, w_);
      last_spike = n;
      ++spike_round;
    } else {
      a = 1;
    }
    BigInt q_next = a * q + q_prev;
    if (kind_ == Kind::kSpikedOnes && n == last_spike) {
      // Threshold for k_{i+1}: q_{k_i+1}^(2^(i+1)).
      threshold = q_next;
      for (int j = 0; j <= spike_round; ++j) threshold *= threshold;
    }
    q_prev = q;
    q = q_next;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<int> PartialQuotientSource::SpikeIndices(int depth) const {
  if (kind_ != Kind::kSpikedOnes) return {};
  std::vector<BigInt> a = Generate(depth);
  std::vector<int> spikes;
  const int seeds = static_cast<int>(list_.size());
  // Recompute the decision sequence instead of inferring from a == 1, since
  // a targeted quotient can itself equal 1.
  BigInt q_prev = 0, q = 1, threshold;
  int round = 1, last = -1;
  for (int n = 0; n < depth; ++n) {
    bool spike = false;
    if (n == seeds) {
      spike = true;
    } else if (n > seeds && n > last + 1 && q > threshold) {
      spike = true;
      ++round;
    }
    BigInt q_next = a[n] * q + q_prev;
    if (spike) {
      spikes.push_back(n);
      last = n;
      threshold = q_next;
      for (int j = 0; j <= round; ++j) threshold *= threshold;
    }
    q_prev = q;
    q = q_next;
  }
  return spikes;
}

int PartialQuotientSource::Length() const {
  return kind_ == Kind::kExplicitList ? static_cast<int>(list_.size()) : -1;
}

std::string PartialQuotientSource::Describe() const {
  switch (kind_) {
    case Kind::kExplicitList:
      return "list:" + JoinList(list_);
    case Kind::kEventuallyPeriodic:
      return "periodic:" + JoinList(list_) + "|" + JoinList(period_);
    case Kind::kConstant:
      return constant_ == 1 ? "golden" : "rule:a_k=" + constant_.get_str();
    case Kind::kIndex:
      return "rule:a_k=k";
    case Kind::kExponentTargeting:
      return "target:w=" + ToString(w_) + ";seed=" + JoinList(list_);
    case Kind::kSpikedOnes:
      return "example2:w=" + ToString(w_) + ";seed=" + JoinList(list_);
  }
  return "";
}

ConvergentTable ConvergentTable::Expand(const PartialQuotientSource& source,
                                        int K) {
  if (K < 2) throw Error(ErrorKind::kInvalidArgument, "depth must be at least 2");
  return FromQuotients(source.Generate(K));
}

ConvergentTable ConvergentTable::ExpandForPrecision(
    const PartialQuotientSource& source, int min_depth, int bits,
    int max_depth) {
  Rational target(1);
  mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), bits);
  int K = std::max(min_depth, 2);
  while (true) {
    int length = source.Length();
    if (length >= 0 && K > length) {
      if (length < min_depth) {
        throw Error(ErrorKind::kInsufficientQuotients,
                    "insufficient quotients for requested depth");
      }
      return Expand(source, length);
    }
    ConvergentTable t = Expand(source, K);
    if (t.theta().Width() <= target || K >= max_depth) return t;
    // Width is 1/(q_K q_{K-1}); jump by an estimate, at least one step.
    long have = static_cast<long>(mpz_sizeinbase(t.q(K).get_mpz_t(), 2)) +
                static_cast<long>(mpz_sizeinbase(t.q(K - 1).get_mpz_t(), 2));
    long missing = bits - have + 2;
    int step = 1;
    if (source.kind() != PartialQuotientSource::Kind::kExponentTargeting &&
        source.kind() != PartialQuotientSource::Kind::kSpikedOnes) {
      step = std::max(1, static_cast<int>(missing / 2 / std::max<long>(1, have / (2 * K))));
      step = std::min(step, std::max(1, K));
    }
    K = std::min(max_depth, K + step);
  }
}

ConvergentTable ConvergentTable::FromQuotients(std::vector<BigInt> a) {
  if (a.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least two quotients");
  }
  CheckPositive(a);
  ConvergentTable t;
  const int K = static_cast<int>(a.size());
  t.a_.reserve(K + 1);
  t.a_.push_back(0);
  for (BigInt& x : a) t.a_.push_back(std::move(x));
  t.p_.resize(K + 2);
  t.q_.resize(K + 2);
  t.p_[0] = 1;
  t.q_[0] = 0;
  t.p_[1] = 0;
  t.q_[1] = 1;
  for (int k = 1; k <= K; ++k) {
    t.p_[k + 1] = t.a_[k] * t.p_[k] + t.p_[k - 1];
    t.q_[k + 1] = t.a_[k] * t.q_[k] + t.q_[k - 1];
  }
  Rational x(t.p_[K + 1], t.q_[K + 1]), y(t.p_[K], t.q_[K]);
  x.canonicalize();
  y.canonicalize();
  t.theta_ = x < y ? Enclosure(x, y) : Enclosure(y, x);

  t.norm_.reserve(K);
  t.norm_.push_back(Enclosure::Point(1));  // k = -1
  for (int k = 0; k <= K - 2; ++k) {
    Enclosure raw = Rational(t.q(k)) * t.theta_ + Rational(-t.p(k));
    if (Sign(k) < 0) raw = -raw;
    Rational lo(1, 1), hi(1, 1);
    lo /= Rational(t.q(k + 1) + t.q(k));
    hi /= Rational(t.q(k + 1));
    t.norm_.push_back(Intersect(raw, Enclosure(lo, hi)));
  }
  return t;
}

const BigInt& ConvergentTable::a(int k) const {
  if (k < 1 || k > depth()) {
    throw Error(ErrorKind::kInvalidArgument, "a_k index out of range");
  }
  return a_[k];
}

const BigInt& ConvergentTable::p(int k) const {
  if (k < -1 || k > depth()) {
    throw Error(ErrorKind::kInvalidArgument, "p_k index out of range");
  }
  return p_[k + 1];
}

const BigInt& ConvergentTable::q(int k) const {
  if (k < -1 || k > depth()) {
    throw Error(ErrorKind::kInvalidArgument, "q_k index out of range: " +
                                                 std::to_string(k));
  }
  return q_[k + 1];
}

const Enclosure& ConvergentTable::NormQk(int k) const {
  if (k < -1 || k > depth() - 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "norm index " + std::to_string(k) + " out of range for depth " +
                    std::to_string(depth()));
  }
  return norm_[k + 1];
}

Enclosure ConvergentTable::NormN(const BigInt& n, const Rational& max_width) const {
  if (n < 1 || n > q(depth())) {
    throw Error(ErrorKind::kInvalidArgument, "n out of range for norm");
  }
  Enclosure e = Rational(n) * theta_;
  if (max_width > 0 && e.Width() > max_width) {
    throw Error(ErrorKind::kInsufficientDepth,
                "theta enclosure too wide for ||n theta||");
  }
  auto dist = [](const Rational& x) {
    Rational f = x - Rational(Floor(x));
    return f <= Rational(1, 2) ? f : Rational(1 - f);
  };
  bool has_integer = Ceil(e.lo) <= Floor(e.hi);
  bool has_half =
      Ceil(e.lo - Rational(1, 2)) <= Floor(e.hi - Rational(1, 2));
  Rational da = dist(e.lo), db = dist(e.hi);
  return Enclosure(has_integer ? Rational(0) : std::min(da, db),
                   has_half ? Rational(1, 2) : std::max(da, db));
}

Enclosure ConvergentTable::OrbitPoint(const BigInt& n) const {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "negative orbit index");
  Enclosure e = Rational(n) * theta_;
  Rational fl(Floor(e.lo));
  return Enclosure(e.lo - fl, e.hi - fl);
}

ExponentEstimate ConvergentTable::EstimateExponent(int k, int bits) const {
  if (k < 2 || k >= depth()) {
    throw Error(ErrorKind::kInvalidArgument, "exponent estimate index out of range");
  }
  ExponentEstimate out;
  bool have = false;
  for (int n = 1; n <= k; ++n) {
    if (q(n) < 2) continue;
    Enclosure r = Log(q(n + 1), bits) / Log(q(n), bits);
    if (!have) {
      out.running_max = r;
      out.argmax = n;
      have = true;
    } else {
      if (r.Mid() > out.running_max.Mid()) out.argmax = n;
      out.running_max = Enclosure(std::max(out.running_max.lo, r.lo),
                                  std::max(out.running_max.hi, r.hi));
    }
    if (n == k) out.last_ratio = r;
  }
  if (!have) {
    throw Error(ErrorKind::kInsufficientDepth, "no q_n >= 2 below k");
  }
  return out;
}

IdentityReport ConvergentTable::VerifyIdentities(int k) const {
  if (k < 0 || k + 2 >= depth()) {
    throw Error(ErrorKind::kInvalidArgument, "identity index out of range");
  }
  IdentityReport r;
  auto fail = [&](bool& flag, const std::string& what, int n) {
    if (flag && r.first_failure.empty()) {
      r.first_failure = what + " at n=" + std::to_string(n);
    }
    flag = false;
  };
  auto track = [&](const Enclosure& e) {
    if (e.Width() > r.max_width) r.max_width = e.Width();
  };
  for (int n = 0; n <= k; ++n) {
    if (p(n + 1) != a(n + 1) * p(n) + p(n - 1) ||
        q(n + 1) != a(n + 1) * q(n) + q(n - 1)) {
      fail(r.recurrence, "recurrence", n);
    }
    BigInt det = p(n + 1) * q(n) - p(n) * q(n + 1);
    if (det != Sign(n)) fail(r.determinant, "determinant", n);

    const Enclosure& prev = NormQk(n - 1);
    const Enclosure& cur = NormQk(n);
    const Enclosure& next = NormQk(n + 1);
    track(cur);
    track(next);
    Enclosure rhs1 = Rational(a(n + 1)) * cur + next;
    if (!prev.Overlaps(rhs1)) fail(r.eq1, "eq1", n);
    Enclosure lhs2 = Rational(q(n + 1)) * cur + Rational(q(n)) * next;
    if (!lhs2.Contains(1)) fail(r.eq2, "eq2", n);
    Rational lower(1, 1), upper(1, 1);
    lower /= Rational(q(n + 1) + q(n));
    upper /= Rational(q(n + 1));
    if (!(cur.hi > lower && cur.lo <= upper)) fail(r.estimate, "estimate", n);
  }
  return r;
}

}  // namespace dirichlet
