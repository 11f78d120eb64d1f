#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "kwall/error.hpp"

namespace kwall {

// All scalar arithmetic in this library is exact. Rat is a canonical
// arbitrary-precision rational (coprime, positive denominator); mpq_class
// maintains that invariant on every operation.
using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p/q" and integer literals only; no decimals.
Rat rat_from_string(const std::string& s);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& q);

// Two-argument rational construction must go through rat_q: the raw
// numerator/denominator constructor of the underlying type does not reduce,
// and non-canonical values break equality tests.
template <typename A, typename B>
inline Rat rat_q(A&& num, B&& den) {
  Rat q(std::forward<A>(num), std::forward<B>(den));
  q.canonicalize();
  return q;
}
inline Rat rat(long n, long d = 1) { return rat_q(n, d); }
inline Rat rat_of(long long v) { return Rat(static_cast<long>(v)); }

inline int sign(const Rat& q) { return sgn(q); }

// Largest k >= 0 with k^2 <= x (x >= 0).
Int isqrt_floor(const Int& x);

// Largest integer k >= 0 with k^2 <= p/q, for p/q >= 0.
Int rat_sqrt_floor(const Rat& x);

// Exact value a + b*sqrt(m) with m a non-negative integer. Supports sign
// determination and comparison against values built over a different radicand,
// which is what the wall/exclusion arithmetic needs (only sqrt(2), sqrt(8),
// sqrt(2*w1*w2) style radicands ever occur).
struct SqrtVal {
  Rat a;
  Rat b;
  Int m;  // radicand, >= 0

  SqrtVal() : a(0), b(0), m(0) {}
  SqrtVal(Rat a_, Rat b_, Int m_) : a(std::move(a_)), b(std::move(b_)), m(std::move(m_)) {}
  static SqrtVal from_rat(const Rat& r) { return SqrtVal(r, Rat(0), Int(0)); }

  bool is_rational() const;
  // Only valid when is_rational().
  Rat to_rat() const;

  int sign() const;  // -1, 0, +1
  SqrtVal operator-() const { return SqrtVal(-a, -b, m); }
};

// sign(x - y); x and y may carry different radicands.
int sqrtval_cmp(const SqrtVal& x, const SqrtVal& y);
int sqrtval_cmp(const SqrtVal& x, const Rat& y);

std::string sqrtval_to_string(const SqrtVal& v);

// A rational strictly between lo and hi (requires lo < hi).
Rat rational_between(const SqrtVal& lo, const SqrtVal& hi);

}  // namespace kwall
