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

// Partial quotient sources and exact convergent tables for
// theta = [0; a_1, a_2, ...] in (0, 1).
//
// Conventions: p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1. The sign of
// q_k theta - p_k is (-1)^k, so even convergents lie below theta.

#ifndef DIRICHLET_CONTINUED_FRACTION_H_
#define DIRICHLET_CONTINUED_FRACTION_H_

#include <string>
#include <vector>

#include "dirichlet/enclosure.h"

namespace dirichlet {

class PartialQuotientSource {
 public:
  enum class Kind {
    kExplicitList,
    kEventuallyPeriodic,
    kConstant,        // a_k = c
    kIndex,           // a_k = k
    kExponentTargeting,
    kSpikedOnes,      // ones between sparse exponent-targeted spikes
  };

  static PartialQuotientSource ExplicitList(std::vector<BigInt> a);
  static PartialQuotientSource EventuallyPeriodic(std::vector<BigInt> pre,
                                                  std::vector<BigInt> period);
  static PartialQuotientSource Constant(const BigInt& c);
  static PartialQuotientSource Golden() { return Constant(1); }
  static PartialQuotientSource Index();
  // a_{k+1} = max(1, ceil((t - q_{k-1}) / q_k)) where t is the least integer
  // with t >= q_k^w, so q_{k+1} >= q_k^w. Seeds are emitted first.
  static PartialQuotientSource ExponentTargeting(const Rational& w,
                                                 std::vector<BigInt> seeds);
  // a_{n+1} = 1 except at spikes k_1 < k_2 < ..., where a_{k_i+1} is chosen
  // by exponent targeting. k_1 = seeds.size(); k_i is the least
  // n > k_{i-1} + 1 with q_n > q_{k_{i-1}+1}^(2^i).
  static PartialQuotientSource SpikedOnes(const Rational& w,
                                          std::vector<BigInt> seeds);

  // Spec strings: "golden", "list:3,1,2", "periodic:1,2|3" (preperiod|period,
  // bar optional), "rule:a_k=k", "rule:a_k=5", "target:w=2;seed=2,2",
  // "example2:w=2;seed=2,2".
  static PartialQuotientSource Parse(const std::string& spec);

  // First K quotients; throws kInsufficientQuotients if the source is
  // shorter.
  std::vector<BigInt> Generate(int K) const;

  Kind kind() const { return kind_; }
  const Rational& target_exponent() const { return w_; }
  // Spike indices k_i below `depth` (SpikedOnes only).
  std::vector<int> SpikeIndices(int depth) const;
  // Number of quotients for finite sources, -1 otherwise.
  int Length() const;
  std::string Describe() const;

 private:
  Kind kind_ = Kind::kConstant;
  std::vector<BigInt> list_;    // explicit list, preperiod or seeds
  std::vector<BigInt> period_;
  BigInt constant_ = 1;
  Rational w_ = 0;
};

struct ExponentEstimate {
  Enclosure running_max;  // max over n <= k of log q_{n+1} / log q_n
  int argmax = 0;
  Enclosure last_ratio;   // log q_{k+1} / log q_k
};

struct IdentityReport {
  bool recurrence = true;
  bool determinant = true;
  bool eq1 = true;        // ||q_{n-1}|| = a_{n+1}||q_n|| + ||q_{n+1}||
  bool eq2 = true;        // q_{n+1}||q_n|| + q_n||q_{n+1}|| = 1
  bool estimate = true;   // 1/(q_{n+1}+q_n) < ||q_n|| <= 1/q_{n+1}
  Rational max_width = 0;  // widest enclosure that took part
  std::string first_failure;
  bool AllPass() const {
    return recurrence && determinant && eq1 && eq2 && estimate;
  }
};

class ConvergentTable {
 public:
  // Table from the first K >= 2 quotients of `source`.
  static ConvergentTable Expand(const PartialQuotientSource& source, int K);
  // Deepens past `min_depth` until theta is enclosed to width <= 2^-bits.
  // Stops at max_depth; finite sources stop at their length.
  static ConvergentTable ExpandForPrecision(const PartialQuotientSource& source,
                                            int min_depth, int bits,
                                            int max_depth = 20000);
  static ConvergentTable FromQuotients(std::vector<BigInt> a);

  int depth() const { return static_cast<int>(a_.size()) - 1; }
  // 1 <= k <= depth.
  const BigInt& a(int k) const;
  // -1 <= k <= depth.
  const BigInt& p(int k) const;
  const BigInt& q(int k) const;
  const std::vector<BigInt>& quotients() const { return a_; }
  const Enclosure& theta() const { return theta_; }
  static int Sign(int k) { return (k % 2 == 0) ? 1 : -1; }

  // |q_k theta - p_k| for -1 <= k <= depth - 2.
  const Enclosure& NormQk(int k) const;
  // ||n theta|| for 1 <= n <= q_K. Throws kInsufficientDepth when the
  // enclosure is wider than max_width (if positive).
  Enclosure NormN(const BigInt& n, const Rational& max_width = 0) const;
  // n theta mod 1 with lo in [0, 1) (hi may exceed 1 by the width).
  Enclosure OrbitPoint(const BigInt& n) const;

  // 2 <= k < depth.
  ExponentEstimate EstimateExponent(int k, int bits = 64) const;
  // Checks every n in [0, k]; requires k + 2 < depth.
  IdentityReport VerifyIdentities(int k) const;

 private:
  std::vector<BigInt> a_;  // a_[0] unused
  std::vector<BigInt> p_;  // p_[k + 1] = p_k
  std::vector<BigInt> q_;
  Enclosure theta_;
  std::vector<Enclosure> norm_;  // norm_[k + 1] = |q_k theta - p_k|
};

}  // namespace dirichlet

#endif  // DIRICHLET_CONTINUED_FRACTION_H_
