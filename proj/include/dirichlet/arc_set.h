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

// Finite unions of open arcs on the circle R/Z with exact rational ends.
//
// Arcs are open. Two arcs that share an endpoint stay separate components,
// and the shared point is not in the set. An arc with start == end denotes
// the circle minus that point; the full circle is a separate flag.

#ifndef DIRICHLET_ARC_SET_H_
#define DIRICHLET_ARC_SET_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dirichlet/enclosure.h"
#include "dirichlet/interval_algebra.h"

namespace dirichlet {

struct Arc {
  Rational start;  // in [0, 1)
  Rational end;    // in [0, 1); the arc runs counterclockwise from start
  Rational Length() const;
  bool operator==(const Arc& o) const { return start == o.start && end == o.end; }
};

enum class Rounding { kInner, kOuter };

class ArcSet {
 public:
  ArcSet() = default;
  static ArcSet Empty() { return ArcSet(); }
  static ArcSet Full();
  // Open arc from `start` to `end` (both taken mod 1). Equal ends give the
  // circle minus one point. A length of 1 or more gives the full circle.
  static ArcSet FromArc(const Rational& start, const Rational& end);
  // Open arc (lo, hi) of the real line projected to the circle.
  static ArcSet FromLine(const Rational& lo, const Rational& hi);
  static ArcSet FromSegments(LinearSegments<Rational> segs);

  // Certified ball around an enclosed center. Inner gives a subset of
  // B(c, r) for every c, r in the enclosures, Outer a superset. Requires
  // radius.hi < 1/2 and center plus radius width <= precision (if positive),
  // else kInvalidArgument / kInsufficientDepth.
  static ArcSet Ball(const Enclosure& center, const Enclosure& radius,
                     Rounding mode, const Rational& precision = 0);

  bool full() const;
  bool empty() const { return segs_.segs.empty(); }
  // Canonical arcs sorted by start; a wrapping arc comes last. Empty when
  // full().
  std::vector<Arc> arcs() const;
  const LinearSegments<Rational>& segments() const { return segs_; }

  Rational Measure() const;
  int ComponentCount() const;
  // Shortest complementary gap; 0 when two arcs touch. nullopt for the full
  // or the empty set.
  std::optional<Rational> MinGap() const;
  bool Contains(const Rational& y) const;
  bool IsSubsetOf(const ArcSet& other) const;

  bool operator==(const ArcSet& o) const { return segs_ == o.segs_; }
  bool operator!=(const ArcSet& o) const { return !(*this == o); }

  std::string ToString() const;

 private:
  explicit ArcSet(LinearSegments<Rational> s) : segs_(std::move(s)) {}
  LinearSegments<Rational> segs_;
};

inline std::ostream& operator<<(std::ostream& os, const ArcSet& s) {
  return os << s.ToString();
}

ArcSet Unite(const ArcSet& a, const ArcSet& b);
ArcSet Intersect(const ArcSet& a, const ArcSet& b);
// Interior of the complement, so De Morgan holds exactly.
ArcSet Complement(const ArcSet& a);
ArcSet UniteAll(std::vector<ArcSet> sets);

}  // namespace dirichlet

#endif  // DIRICHLET_ARC_SET_H_
