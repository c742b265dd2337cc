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

// Open subsets of a circle of circumference P, stored as open segments of
// [0, P] plus a flag for the point 0 (= P). Shared by the exact-rational
// ArcSet and the fixed-point oracle circle.
//
// Canonical form: segments sorted, pairwise non-overlapping (touching is
// allowed and means the shared point is missing), 0 <= start < end <= P, and
// zero_in only when a segment starts at 0 and another ends at P.

#ifndef DIRICHLET_INTERVAL_ALGEBRA_H_
#define DIRICHLET_INTERVAL_ALGEBRA_H_

#include <algorithm>
#include <utility>
#include <vector>

namespace dirichlet {

template <typename T>
struct LinearSegments {
  std::vector<std::pair<T, T>> segs;
  bool zero_in = false;

  bool operator==(const LinearSegments& o) const {
    return zero_in == o.zero_in && segs == o.segs;
  }
};

template <typename T>
LinearSegments<T> FullSegments(const T& period) {
  LinearSegments<T> s;
  s.segs.emplace_back(T(0), period);
  s.zero_in = true;
  return s;
}

// Canonicalizes arbitrary open segments of [0, P] (empty ones dropped).
template <typename T>
LinearSegments<T> Normalize(std::vector<std::pair<T, T>> segs, bool zero_in) {
  segs.erase(std::remove_if(segs.begin(), segs.end(),
                            [](const auto& s) { return !(s.first < s.second); }),
             segs.end());
  std::sort(segs.begin(), segs.end());
  LinearSegments<T> out;
  for (auto& s : segs) {
    if (!out.segs.empty() && s.first < out.segs.back().second) {
      if (out.segs.back().second < s.second) out.segs.back().second = s.second;
    } else {
      out.segs.push_back(std::move(s));
    }
  }
  out.zero_in = zero_in && !out.segs.empty();
  return out;
}

template <typename T>
LinearSegments<T> Unite(const LinearSegments<T>& a, const LinearSegments<T>& b) {
  std::vector<std::pair<T, T>> all;
  all.reserve(a.segs.size() + b.segs.size());
  std::merge(a.segs.begin(), a.segs.end(), b.segs.begin(), b.segs.end(),
             std::back_inserter(all));
  LinearSegments<T> out;
  for (auto& s : all) {
    if (!out.segs.empty() && s.first < out.segs.back().second) {
      if (out.segs.back().second < s.second) out.segs.back().second = s.second;
    } else {
      out.segs.push_back(std::move(s));
    }
  }
  out.zero_in = a.zero_in || b.zero_in;
  return out;
}

template <typename T>
LinearSegments<T> Intersect(const LinearSegments<T>& a,
                            const LinearSegments<T>& b) {
  LinearSegments<T> out;
  size_t i = 0, j = 0;
  while (i < a.segs.size() && j < b.segs.size()) {
    const T& lo = std::max(a.segs[i].first, b.segs[j].first);
    const T& hi = std::min(a.segs[i].second, b.segs[j].second);
    if (lo < hi) out.segs.emplace_back(lo, hi);
    if (a.segs[i].second < b.segs[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  out.zero_in = a.zero_in && b.zero_in;
  return out;
}

// Interior of the complement.
template <typename T>
LinearSegments<T> Complement(const LinearSegments<T>& a, const T& period) {
  LinearSegments<T> out;
  T cursor(0);
  for (const auto& s : a.segs) {
    if (cursor < s.first) out.segs.emplace_back(cursor, s.first);
    cursor = s.second;
  }
  if (cursor < period) out.segs.emplace_back(cursor, period);
  bool zero_closure = !a.segs.empty() &&
                      (a.segs.front().first == T(0) || a.segs.back().second == period);
  out.zero_in = !zero_closure && !a.zero_in;
  if (a.segs.empty()) out.zero_in = true;
  return out;
}

// A subset of B (both canonical).
template <typename T>
bool IsSubset(const LinearSegments<T>& a, const LinearSegments<T>& b) {
  if (a.zero_in && !b.zero_in) return false;
  size_t j = 0;
  for (const auto& s : a.segs) {
    while (j < b.segs.size() && !(s.first < b.segs[j].second)) ++j;
    if (j == b.segs.size()) return false;
    if (s.first < b.segs[j].first || b.segs[j].second < s.second) return false;
  }
  return true;
}

}  // namespace dirichlet

#endif  // DIRICHLET_INTERVAL_ALGEBRA_H_
