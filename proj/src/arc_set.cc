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

#include "dirichlet/arc_set.h"

#include <utility>

#include "dirichlet/error.h"

namespace dirichlet {
namespace {

Rational Frac(const Rational& x) { return x - Rational(Floor(x)); }

}  // namespace

Rational Arc::Length() const {
  Rational d = Frac(end - start);
  return d == 0 ? Rational(1) : d;
}

ArcSet ArcSet::Full() { return ArcSet(FullSegments(Rational(1))); }

ArcSet ArcSet::FromLine(const Rational& lo, const Rational& hi) {
  Rational len = hi - lo;
  if (len <= 0) return Empty();
  if (len > 1) return Full();
  LinearSegments<Rational> s;
  Rational start = Frac(lo);
  if (len == 1) {
    if (start == 0) {
      s.segs.emplace_back(Rational(0), Rational(1));
    } else {
      s.segs.emplace_back(Rational(0), start);
      s.segs.emplace_back(start, Rational(1));
      s.zero_in = true;
    }
    return ArcSet(std::move(s));
  }
  Rational end = start + len;
  if (end <= 1) {
    s.segs.emplace_back(start, end);
  } else {
    s.segs.emplace_back(Rational(0), end - 1);
    s.segs.emplace_back(start, Rational(1));
    s.zero_in = true;
  }
  return ArcSet(std::move(s));
}

ArcSet ArcSet::FromArc(const Rational& start, const Rational& end) {
  Rational s = Frac(start), e = Frac(end);
  return FromLine(s, e > s ? e : Rational(e + 1));
}

ArcSet ArcSet::FromSegments(LinearSegments<Rational> segs) {
  for (const auto& s : segs.segs) {
    if (s.first < 0 || s.second > 1) {
      throw Error(ErrorKind::kInvalidArgument, "segment outside [0, 1]");
    }
  }
  bool zero = segs.zero_in;
  LinearSegments<Rational> n = Normalize(std::move(segs.segs), zero);
  if (n.zero_in && !(n.segs.front().first == 0 && n.segs.back().second == 1)) {
    throw Error(ErrorKind::kInvalidArgument, "isolated point 0 in open set");
  }
  return ArcSet(std::move(n));
}

ArcSet ArcSet::Ball(const Enclosure& center, const Enclosure& radius,
                    Rounding mode, const Rational& precision) {
  if (radius.lo < 0) {
    throw Error(ErrorKind::kInvalidArgument, "negative radius");
  }
  if (radius.hi >= Rational(1, 2)) {
    throw Error(ErrorKind::kInvalidArgument, "radius >= 1/2");
  }
  if (precision > 0 && center.Width() + radius.Width() > precision) {
    throw Error(ErrorKind::kInsufficientDepth,
                "center/radius enclosure wider than the requested precision");
  }
  if (mode == Rounding::kInner) {
    return FromLine(center.hi - radius.lo, center.lo + radius.lo);
  }
  return FromLine(center.lo - radius.hi, center.hi + radius.hi);
}

bool ArcSet::full() const {
  return segs_.zero_in && segs_.segs.size() == 1;
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  if (full() || segs_.segs.empty()) return out;
  const auto& s = segs_.segs;
  if (segs_.zero_in) {
    for (size_t i = 1; i + 1 < s.size(); ++i) out.push_back({s[i].first, s[i].second});
    out.push_back({s.back().first, s.front().second});
    return out;
  }
  for (const auto& seg : s) {
    out.push_back({seg.first, seg.second == 1 ? Rational(0) : seg.second});
  }
  return out;
}

Rational ArcSet::Measure() const {
  Rational m = 0;
  for (const auto& s : segs_.segs) m += s.second - s.first;
  return m;
}

int ArcSet::ComponentCount() const {
  if (full()) return 1;
  return static_cast<int>(arcs().size());
}

std::optional<Rational> ArcSet::MinGap() const {
  if (full() || empty()) return std::nullopt;
  std::vector<Arc> a = arcs();
  std::optional<Rational> best;
  for (size_t i = 0; i < a.size(); ++i) {
    const Arc& next = a[(i + 1) % a.size()];
    Rational gap = Frac(next.start - a[i].end);
    if (!best || gap < *best) best = gap;
  }
  return best;
}

bool ArcSet::Contains(const Rational& y) const {
  Rational x = Frac(y);
  if (x == 0) return segs_.zero_in;
  for (const auto& s : segs_.segs) {
    if (s.first < x && x < s.second) return true;
    if (x <= s.first) break;
  }
  return false;
}

bool ArcSet::IsSubsetOf(const ArcSet& other) const {
  return IsSubset(segs_, other.segs_);
}

std::string ArcSet::ToString() const {
  if (full()) return "T";
  if (empty()) return "{}";
  std::string out;
  for (const Arc& a : arcs()) {
    if (!out.empty()) out += " u ";
    out += "(" + dirichlet::ToString(a.start) + ", " + dirichlet::ToString(a.end) + ")";
  }
  return out;
}

ArcSet Unite(const ArcSet& a, const ArcSet& b) {
  return ArcSet::FromSegments(Unite(a.segments(), b.segments()));
}

ArcSet Intersect(const ArcSet& a, const ArcSet& b) {
  return ArcSet::FromSegments(Intersect(a.segments(), b.segments()));
}

ArcSet Complement(const ArcSet& a) {
  return ArcSet::FromSegments(Complement(a.segments(), Rational(1)));
}

ArcSet UniteAll(std::vector<ArcSet> sets) {
  std::vector<std::pair<Rational, Rational>> all;
  bool zero = false;
  for (ArcSet& s : sets) {
    zero = zero || s.segments().zero_in;
    for (const auto& seg : s.segments().segs) all.push_back(seg);
  }
  LinearSegments<Rational> segs;
  segs.segs = std::move(all);
  segs.zero_in = zero;
  return ArcSet::FromSegments(std::move(segs));
}

}  // namespace dirichlet
