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

#include "dirichlet/enclosure.h"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <utility>

#include "dirichlet/error.h"

namespace dirichlet {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid argument";
    case ErrorKind::kInsufficientQuotients:
      return "insufficient quotients";
    case ErrorKind::kInsufficientDepth:
      return "insufficient depth";
    case ErrorKind::kUndecidable:
      return "undecidable at this precision";
    case ErrorKind::kOracleInfeasible:
      return "oracle infeasible";
    case ErrorKind::kInvariantViolation:
      return "invariant violation";
  }
  return "unknown";
}

std::string ToString(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string ToString(const BigInt& z) { return z.get_str(); }

Rational ParseRational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot parse rational '" + text + "'");
  };
  if (text.empty()) return fail();
  auto is_int = [](const std::string& s) {
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + start, s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  };
  size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return fail();
    BigInt n(strip_plus(num), 10), d(strip_plus(den), 10);
    if (d == 0) return fail();
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  size_t dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits = strip_plus(neg ? whole.substr(1) : whole);
    if (digits.empty()) digits = "0";
    if (!is_int(digits) || (!frac.empty() && !is_int(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
      return fail();
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt num(digits + frac, 10);
    Rational q(num, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  if (!is_int(text)) return fail();
  return Rational(BigInt(strip_plus(text), 10));
}

BigInt Floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt Ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long FloorLog2(const Rational& q) {
  if (q <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "FloorLog2 of non-positive");
  }
  long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  // 2^(e-1) < q < 2^(e+1); settle which side of 2^e we are on.
  Rational p2 = 1;
  if (e >= 0) {
    mpz_mul_2exp(p2.get_num_mpz_t(), p2.get_num_mpz_t(), e);
  } else {
    mpz_mul_2exp(p2.get_den_mpz_t(), p2.get_den_mpz_t(), -e);
  }
  return q >= p2 ? e : e - 1;
}

BigInt FloorRoot(const BigInt& x, unsigned long v) {
  if (x < 0 || v == 0) {
    throw Error(ErrorKind::kInvalidArgument, "FloorRoot domain");
  }
  BigInt r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), v);
  return r;
}

BigInt CeilRationalPower(const BigInt& x, unsigned long u, unsigned long v) {
  BigInt xu;
  mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
  BigInt t = FloorRoot(xu, v);
  BigInt tv;
  mpz_pow_ui(tv.get_mpz_t(), t.get_mpz_t(), v);
  if (tv < xu) t += 1;
  return t;
}

double ToDouble(const Rational& q) { return q.get_d(); }

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) {
    throw Error(ErrorKind::kInvalidArgument, "enclosure with lo > hi");
  }
}

std::string Enclosure::ToString() const {
  return "[" + dirichlet::ToString(lo) + ", " + dirichlet::ToString(hi) + "]";
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo + b.lo, a.hi + b.hi);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo - b.hi, a.hi - b.lo);
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi, -a.lo); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return Enclosure(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Enclosure operator*(const Rational& c, const Enclosure& a) {
  if (c >= 0) return Enclosure(c * a.lo, c * a.hi);
  return Enclosure(c * a.hi, c * a.lo);
}

Enclosure operator+(const Enclosure& a, const Rational& c) {
  return Enclosure(a.lo + c, a.hi + c);
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo <= 0 && b.hi >= 0) {
    throw Error(ErrorKind::kUndecidable, "division by enclosure containing 0");
  }
  Enclosure inv(1 / b.hi, 1 / b.lo);
  return a * inv;
}

Enclosure Intersect(const Enclosure& a, const Enclosure& b) {
  if (!a.Overlaps(b)) {
    throw Error(ErrorKind::kInvariantViolation,
                "disjoint enclosures of one value: " + a.ToString() + " vs " +
                    b.ToString());
  }
  return Enclosure(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

namespace {

// Round q to a dyadic with about `bits` significant bits, down or up.
Rational RoundDyadic(const Rational& q, int bits, bool up) {
  if (q == 0) return q;
  Rational mag = abs(q);
  long e = FloorLog2(mag);
  long shift = bits - e;  // scale so that about `bits` bits are integral
  Rational scaled = q;
  if (shift >= 0) {
    mpz_mul_2exp(scaled.get_num_mpz_t(), scaled.get_num_mpz_t(), shift);
  } else {
    mpz_mul_2exp(scaled.get_den_mpz_t(), scaled.get_den_mpz_t(), -shift);
  }
  scaled.canonicalize();
  BigInt r = up ? Ceil(scaled) : Floor(scaled);
  Rational out(r);
  if (shift >= 0) {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), shift);
  } else {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), -shift);
  }
  out.canonicalize();
  return out;
}

// Lower (up = false) or upper bound of x^(u/v) for x > 0, u, v >= 1.
Rational PowerBound(const Rational& x, unsigned long u, unsigned long v,
                    int bits, bool up) {
  // Scale so that the root keeps about `bits` significant bits.
  long est = FloorLog2(x);
  long p = bits + 2 - static_cast<long>((est * static_cast<long>(u)) /
                                        static_cast<long>(v));
  BigInt a = x.get_num(), b = x.get_den();
  BigInt au, bu;
  mpz_pow_ui(au.get_mpz_t(), a.get_mpz_t(), u);
  mpz_pow_ui(bu.get_mpz_t(), b.get_mpz_t(), u);
  // A / B = x^u * 2^(v p)
  BigInt A = au, B = bu;
  long vp = static_cast<long>(v) * p;
  if (vp >= 0) {
    mpz_mul_2exp(A.get_mpz_t(), A.get_mpz_t(), vp);
  } else {
    mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), -vp);
  }
  BigInt n;
  mpz_fdiv_q(n.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  BigInt r = FloorRoot(n, v);
  if (up) {
    BigInt rv;
    mpz_pow_ui(rv.get_mpz_t(), r.get_mpz_t(), v);
    if (rv * B != A) r += 1;
  }
  Rational out(r);
  if (p >= 0) {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), p);
  } else {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), -p);
  }
  out.canonicalize();
  return out;
}

void CheckExponent(const Rational& e) {
  if (!BigInt(abs(e.get_num())).fits_ulong_p()) {
    throw Error(ErrorKind::kInvalidArgument, "exponent numerator too large");
  }
  if (!e.get_den().fits_ulong_p()) {
    throw Error(ErrorKind::kInvalidArgument, "exponent denominator too large");
  }
}

}  // namespace

Enclosure Coarsen(const Enclosure& a, int bits) {
  return Enclosure(RoundDyadic(a.lo, bits, false), RoundDyadic(a.hi, bits, true));
}

Order3 Compare(const Enclosure& a, const Enclosure& b) {
  if (a.hi < b.lo) return Order3::kLess;
  if (a.lo > b.hi) return Order3::kGreater;
  return Order3::kUndecided;
}

Enclosure Power(const Enclosure& x, const Rational& e, int bits) {
  if (x.lo <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "Power needs a positive base");
  }
  CheckExponent(e);
  if (e == 0) return Enclosure::Point(1);
  Enclosure base = Coarsen(x, bits + 16);
  bool negative = e < 0;
  unsigned long u = negative ? BigInt(-e.get_num()).get_ui() : e.get_num().get_ui();
  unsigned long v = e.get_den().get_ui();
  if (!negative) {
    return Enclosure(PowerBound(base.lo, u, v, bits, false),
                     PowerBound(base.hi, u, v, bits, true));
  }
  Rational inv_hi = 1 / base.lo, inv_lo = 1 / base.hi;
  return Enclosure(PowerBound(inv_lo, u, v, bits, false),
                   PowerBound(inv_hi, u, v, bits, true));
}

Enclosure Power(const Rational& x, const Rational& e, int bits) {
  if (x <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "Power needs a positive base");
  }
  CheckExponent(e);
  if (e == 0) return Enclosure::Point(1);
  bool negative = e < 0;
  Rational base = negative ? Rational(1 / x) : x;
  unsigned long u = negative ? BigInt(-e.get_num()).get_ui() : e.get_num().get_ui();
  unsigned long v = e.get_den().get_ui();
  return Enclosure(PowerBound(base, u, v, bits, false),
                   PowerBound(base, u, v, bits, true));
}

namespace {

Rational MpfrToRational(mpfr_t x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

Enclosure Log(const Rational& q, int bits) {
  if (q <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "Log of non-positive value");
  }
  mpfr_prec_t prec = bits + 32;
  mpfr_t x, y;
  mpfr_init2(x, prec);
  mpfr_init2(y, prec);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
  mpfr_log(y, x, MPFR_RNDD);
  Rational lo = MpfrToRational(y);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
  mpfr_log(y, x, MPFR_RNDU);
  Rational hi = MpfrToRational(y);
  mpfr_clear(x);
  mpfr_clear(y);
  return Enclosure(lo, hi);
}

Enclosure Log(const BigInt& n, int bits) { return Log(Rational(n), bits); }

Enclosure Log(const Enclosure& x, int bits) {
  if (x.lo <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "Log of non-positive enclosure");
  }
  return Enclosure(Log(x.lo, bits).lo, Log(x.hi, bits).hi);
}

}  // namespace dirichlet
