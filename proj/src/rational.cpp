#include "kwall/rational.hpp"

#include <cctype>

namespace kwall {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::Parse, "empty rational literal");
  size_t i = 0;
  auto read_int = [&](const char* what) {
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) fail(ErrorCode::Parse, std::string("missing digits in ") + what + " of '" + s + "'");
    return s.substr(start, i - start);
  };
  std::string num = read_int("numerator");
  std::string den = "1";
  if (i < s.size() && s[i] == '/') {
    ++i;
    den = read_int("denominator");
  }
  if (i != s.size()) fail(ErrorCode::Parse, "trailing characters in rational literal '" + s + "'");
  Int n(num), d(den);
  if (d == 0) fail(ErrorCode::Parse, "zero denominator in '" + s + "'");
  Rat q = rat_q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int isqrt_floor(const Int& x) {
  if (x < 0) fail(ErrorCode::Range, "isqrt of negative value");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Int rat_sqrt_floor(const Rat& x) {
  if (x < 0) fail(ErrorCode::Range, "sqrt of negative rational");
  // floor(sqrt(p/q)): start from isqrt(p/q truncated), then correct exactly.
  Int p = x.get_num(), q = x.get_den();
  Int k = isqrt_floor(p / q);
  while (k * k * q > p) --k;
  while ((k + 1) * (k + 1) * q <= p) ++k;
  return k;
}

bool SqrtVal::is_rational() const {
  if (b == 0 || m == 0) return true;
  Int r = isqrt_floor(m);
  return r * r == m;
}

Rat SqrtVal::to_rat() const {
  if (b == 0 || m == 0) return a;
  Int r = isqrt_floor(m);
  if (r * r != m) fail(ErrorCode::Internal, "SqrtVal is irrational");
  return a + b * Rat(r);
}

int SqrtVal::sign() const {
  if (b == 0 || m == 0) return sgn(a);
  Int r = isqrt_floor(m);
  if (r * r == m) return sgn(a + b * Rat(r));
  int sa = sgn(a), sb = sgn(b);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(m) have opposite signs: compare a^2 against b^2*m.
  Rat lhs = a * a, rhs = b * b * Rat(m);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

namespace {

// sign of (x + c*sqrt(n)) where x = a + b*sqrt(m); the cross term forces one
// level of squaring, after which only sqrt(m) remains.
int sign_mixed(const SqrtVal& x, const Rat& c, const Int& n) {
  if (c == 0 || n == 0) return x.sign();
  Int r = isqrt_floor(n);
  if (r * r == n) return SqrtVal(x.a + c * Rat(r), x.b, x.m).sign();
  int sx = x.sign();
  int sc = sgn(c);
  if (sx == 0) return sc;
  if (sx == sc) return sx;
  // Opposite signs: compare x^2 vs c^2*n. x^2 = (a^2 + b^2 m) + 2ab sqrt(m).
  SqrtVal diff(x.a * x.a + x.b * x.b * Rat(x.m) - c * c * Rat(n), 2 * x.a * x.b, x.m);
  int sd = diff.sign();
  if (sd == 0) return 0;
  return sd > 0 ? sx : sc;
}

}  // namespace

int sqrtval_cmp(const SqrtVal& x, const SqrtVal& y) {
  if (y.b == 0 || y.m == 0) return SqrtVal(x.a - y.a, x.b, x.m).sign();
  if (x.m == y.m) return SqrtVal(x.a - y.a, x.b - y.b, x.m).sign();
  return sign_mixed(SqrtVal(x.a - y.a, x.b, x.m), -y.b, y.m);
}

int sqrtval_cmp(const SqrtVal& x, const Rat& y) { return SqrtVal(x.a - y, x.b, x.m).sign(); }

std::string sqrtval_to_string(const SqrtVal& v) {
  if (v.b == 0 || v.m == 0) return rat_to_string(v.a);
  std::string s = rat_to_string(v.a);
  s += (sgn(v.b) < 0 ? " - " : " + ");
  Rat ab = abs(v.b);
  if (ab != 1) s += rat_to_string(ab) + "*";
  s += "sqrt(" + v.m.get_str() + ")";
  return s;
}

namespace {

Int sqrtval_floor(const SqrtVal& v) {
  Rat approx = v.a;
  if (v.b != 0 && v.m != 0) {
    Int scale = 1;
    scale <<= 40;
    Int s = isqrt_floor(v.m * scale * scale);
    approx += v.b * rat_q(s, scale);
  }
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), approx.get_num().get_mpz_t(), approx.get_den().get_mpz_t());
  while (sqrtval_cmp(v, Rat(fl + 1)) >= 0) ++fl;
  while (sqrtval_cmp(v, Rat(fl)) < 0) --fl;
  return fl;
}

SqrtVal sqrtval_sub_rat(const SqrtVal& v, const Rat& r) { return SqrtVal(v.a - r, v.b, v.m); }

SqrtVal sqrtval_reciprocal(const SqrtVal& v) {
  if (v.b == 0 || v.m == 0) {
    if (v.a == 0) fail(ErrorCode::Internal, "reciprocal of zero");
    return SqrtVal::from_rat(1 / v.a);
  }
  Rat den = v.a * v.a - v.b * v.b * Rat(v.m);
  if (den == 0) fail(ErrorCode::Internal, "reciprocal of zero");
  return SqrtVal(v.a / den, -v.b / den, v.m);
}

// Simplest rational in the open interval, by the continued-fraction walk.
Rat simplest_in(const SqrtVal& lo, const SqrtVal& hi, int depth) {
  if (depth > 512) fail(ErrorCode::Internal, "rational search did not converge");
  Int fl = sqrtval_floor(lo);
  Rat candidate(fl + 1);
  if (sqrtval_cmp(hi, candidate) > 0) return candidate;  // an integer fits
  SqrtVal lo_f = sqrtval_sub_rat(lo, Rat(fl));
  SqrtVal hi_f = sqrtval_sub_rat(hi, Rat(fl));
  if (lo_f.sign() == 0) {
    // interval (0, hi_f] with hi_f <= 1: take 1/q just below hi_f
    if (sqrtval_cmp(hi_f, Rat(1)) == 0) return Rat(fl) + rat_q(1, 2);
    Int q = sqrtval_floor(sqrtval_reciprocal(hi_f)) + 1;
    return Rat(fl) + Rat(1) / Rat(q);
  }
  Rat inner = simplest_in(sqrtval_reciprocal(hi_f), sqrtval_reciprocal(lo_f), depth + 1);
  return Rat(fl) + 1 / inner;
}

}  // namespace

Rat rational_between(const SqrtVal& lo, const SqrtVal& hi) {
  if (sqrtval_cmp(lo, hi) >= 0) fail(ErrorCode::Internal, "rational_between: empty interval");
  Rat r = simplest_in(lo, hi, 0);
  if (sqrtval_cmp(lo, r) >= 0 || sqrtval_cmp(hi, r) <= 0)
    fail(ErrorCode::Internal, "rational witness landed outside the interval");
  return r;
}

}  // namespace kwall
