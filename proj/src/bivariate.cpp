#include "kwall/bivariate.hpp"

#include <algorithm>
#include <sstream>

namespace kwall {

void up_trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int up_deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly up_const(const Rat& c) {
  if (c == 0) return {};
  return {c};
}

UPoly up_add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  up_trim(r);
  return r;
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  up_trim(r);
  return r;
}

UPoly up_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  up_trim(r);
  return r;
}

UPoly up_scale(const UPoly& a, const Rat& c) {
  if (c == 0) return {};
  UPoly r = a;
  for (Rat& v : r) v *= c;
  return r;
}

UPoly up_derivative(const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
  up_trim(r);
  return r;
}

Rat up_eval(const UPoly& a, const Rat& x) {
  Rat v(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  return v;
}

void up_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) fail(ErrorCode::Internal, "polynomial division by zero");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  Rat lead = b.back();
  while (up_deg(r) >= up_deg(b)) {
    int k = up_deg(r) - up_deg(b);
    Rat c = r.back() / lead;
    q[k] += c;
    for (size_t i = 0; i < b.size(); ++i) r[k + i] -= c * b[i];
    up_trim(r);
    if (r.empty()) break;
  }
  up_trim(q);
}

namespace {

using ZPoly = std::vector<Int>;

void z_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// integer-primitive image of a rational polynomial (content and sign dropped)
ZPoly to_primitive_z(const UPoly& p) {
  Int den(1);
  for (const Rat& c : p) {
    Int d = c.get_den();
    den = den / gcd(den, d) * d;
  }
  ZPoly z;
  z.reserve(p.size());
  Int content(0);
  for (const Rat& c : p) {
    Int v = c.get_num() * (den / c.get_den());
    z.push_back(v);
    content = gcd(content, v);
  }
  if (content != 0)
    for (Int& v : z) v /= content;
  z_trim(z);
  return z;
}

void z_make_primitive(ZPoly& p) {
  Int content(0);
  for (const Int& v : p) content = gcd(content, v);
  if (content > 1)
    for (Int& v : p) v /= content;
}

// pseudo-remainder lc(b)^(da-db+1) * a mod b over Z
ZPoly z_prem(ZPoly a, const ZPoly& b) {
  const Int& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    Int top = a.back();
    size_t k = a.size() - b.size();
    for (Int& v : a) v *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[k + i] -= top * b[i];
    z_trim(a);
  }
  return a;
}

}  // namespace

// Primitive PRS over Z: no denominators, contents stripped every step.
UPoly up_gcd(UPoly a, UPoly b) {
  up_trim(a);
  up_trim(b);
  if (a.empty() && b.empty()) return {};
  ZPoly za = to_primitive_z(a), zb = to_primitive_z(b);
  if (za.size() < zb.size()) std::swap(za, zb);
  while (!zb.empty()) {
    ZPoly r = z_prem(za, zb);
    z_make_primitive(r);
    za = std::move(zb);
    zb = std::move(r);
  }
  UPoly g;
  g.reserve(za.size());
  Rat lead(za.back());
  for (const Int& v : za) g.push_back(Rat(v) / lead);
  return g;
}

UPoly up_squarefree_part(const UPoly& a) {
  if (up_deg(a) <= 0) return a;
  UPoly g = up_gcd(a, up_derivative(a));
  if (up_deg(g) <= 0) return a;
  UPoly q, r;
  up_divmod(a, g, q, r);
  return q;
}

Rat up_resultant(const UPoly& a, const UPoly& b) {
  int da = up_deg(a), db = up_deg(b);
  if (da < 0 || db < 0) return Rat(0);
  if (da == 0 && db == 0) return Rat(1);
  if (db == 0) {
    Rat v(1);
    for (int i = 0; i < da; ++i) v *= b[0];
    return v;
  }
  if (da < db) {
    Rat sign((da % 2) && (db % 2) ? -1 : 1);
    return sign * up_resultant(b, a);
  }
  UPoly q, r;
  up_divmod(a, b, q, r);
  if (r.empty()) return Rat(0);
  int dr = up_deg(r);
  Rat lead(1);
  for (int i = 0; i < da - dr; ++i) lead *= b.back();
  Rat sign((da % 2) && (db % 2) ? -1 : 1);
  return sign * lead * up_resultant(b, r);
}

std::string up_to_string(const UPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = up_deg(p); i >= 0; --i) {
    if (p[i] == 0) continue;
    Rat mag = abs(p[i]);
    if (first) {
      if (sgn(p[i]) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(p[i]) < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << rat_to_string(mag);
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// bivariate

int BPoly::deg_s() const {
  int d = -1;
  for (const UPoly& c : coeff_t) d = std::max(d, up_deg(c));
  return d;
}

void bp_trim(BPoly& p) {
  while (!p.coeff_t.empty() && p.coeff_t.back().empty()) p.coeff_t.pop_back();
}

BPoly bp_from_const(const UPoly& c) {
  BPoly r;
  if (!c.empty()) r.coeff_t.push_back(c);
  return r;
}

BPoly bp_add(const BPoly& a, const BPoly& b) {
  BPoly r;
  r.coeff_t.resize(std::max(a.coeff_t.size(), b.coeff_t.size()));
  for (size_t i = 0; i < r.coeff_t.size(); ++i) {
    UPoly s;
    if (i < a.coeff_t.size()) s = a.coeff_t[i];
    if (i < b.coeff_t.size()) s = up_add(s, b.coeff_t[i]);
    r.coeff_t[i] = std::move(s);
  }
  bp_trim(r);
  return r;
}

BPoly bp_sub(const BPoly& a, const BPoly& b) {
  BPoly nb = b;
  for (UPoly& c : nb.coeff_t) c = up_scale(c, Rat(-1));
  return bp_add(a, nb);
}

BPoly bp_mul(const BPoly& a, const BPoly& b) {
  BPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.coeff_t.assign(a.coeff_t.size() + b.coeff_t.size() - 1, {});
  for (size_t i = 0; i < a.coeff_t.size(); ++i)
    for (size_t j = 0; j < b.coeff_t.size(); ++j)
      r.coeff_t[i + j] = up_add(r.coeff_t[i + j], up_mul(a.coeff_t[i], b.coeff_t[j]));
  bp_trim(r);
  return r;
}

BPoly bp_mul_upoly(const BPoly& a, const UPoly& c) {
  BPoly r = a;
  for (UPoly& v : r.coeff_t) v = up_mul(v, c);
  bp_trim(r);
  return r;
}

BPoly bp_deriv_t(const BPoly& a) {
  BPoly r;
  for (size_t k = 1; k < a.coeff_t.size(); ++k)
    r.coeff_t.push_back(up_scale(a.coeff_t[k], Rat(static_cast<long>(k))));
  bp_trim(r);
  return r;
}

BPoly bp_deriv_s(const BPoly& a) {
  BPoly r;
  for (const UPoly& c : a.coeff_t) r.coeff_t.push_back(up_derivative(c));
  bp_trim(r);
  return r;
}

BPoly bp_transpose(const BPoly& a) {
  BPoly r;
  int ds = a.deg_s();
  if (ds < 0) return r;
  r.coeff_t.assign(ds + 1, {});
  for (size_t k = 0; k < a.coeff_t.size(); ++k)
    for (size_t i = 0; i < a.coeff_t[k].size(); ++i) {
      if (a.coeff_t[k][i] == 0) continue;
      UPoly& target = r.coeff_t[i];
      if (target.size() <= k) target.resize(k + 1, Rat(0));
      target[k] = a.coeff_t[k][i];
    }
  for (UPoly& c : r.coeff_t) up_trim(c);
  bp_trim(r);
  return r;
}

UPoly bp_eval_s(const BPoly& a, const Rat& s0) {
  UPoly r(a.coeff_t.size(), Rat(0));
  for (size_t k = 0; k < a.coeff_t.size(); ++k) r[k] = up_eval(a.coeff_t[k], s0);
  up_trim(r);
  return r;
}

UPoly bp_content_t(const BPoly& a) {
  UPoly g;
  for (const UPoly& c : a.coeff_t) {
    if (c.empty()) continue;
    g = up_gcd(g, c);
    if (up_deg(g) == 0) break;
  }
  return g;
}

BPoly bp_divide_content(const BPoly& a, const UPoly& c) {
  BPoly r;
  r.coeff_t.reserve(a.coeff_t.size());
  for (const UPoly& v : a.coeff_t) {
    if (v.empty()) {
      r.coeff_t.push_back({});
      continue;
    }
    UPoly q, rem;
    up_divmod(v, c, q, rem);
    if (!rem.empty()) fail(ErrorCode::Internal, "content does not divide coefficient");
    r.coeff_t.push_back(std::move(q));
  }
  bp_trim(r);
  return r;
}

namespace {

// Pseudo-remainder of a by b in (Q[s])[t]: lc(b)^(da-db+1) * a = q*b + r.
BPoly bp_prem(const BPoly& a, const BPoly& b) {
  BPoly r = a;
  int db = b.deg_t();
  const UPoly& lb = b.coeff_t.back();
  while (!r.is_zero() && r.deg_t() >= db) {
    int k = r.deg_t() - db;
    UPoly lr = r.coeff_t.back();
    // r := lb*r - lr * t^k * b
    BPoly lbr = bp_mul_upoly(r, lb);
    BPoly sub;
    sub.coeff_t.assign(k, {});
    for (const UPoly& c : b.coeff_t) sub.coeff_t.push_back(up_mul(c, lr));
    bp_trim(sub);
    r = bp_sub(lbr, sub);
  }
  return r;
}

BPoly bp_primitive_part(const BPoly& a) {
  if (a.is_zero()) return a;
  UPoly c = bp_content_t(a);
  BPoly p = bp_divide_content(a, c);
  // normalize: leading t-coefficient monic in s
  Rat lead = p.coeff_t.back().back();
  for (UPoly& v : p.coeff_t) v = up_scale(v, 1 / lead);
  return p;
}

}  // namespace

BPoly bp_gcd(const BPoly& a, const BPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UPoly cont = up_gcd(bp_content_t(a), bp_content_t(b));
  BPoly pa = bp_primitive_part(a);
  BPoly pb = bp_primitive_part(b);
  if (pa.deg_t() < pb.deg_t()) std::swap(pa, pb);
  // primitive PRS
  while (!pb.is_zero() && pb.deg_t() > 0) {
    BPoly r = bp_prem(pa, pb);
    pa = pb;
    pb = r.is_zero() ? r : bp_primitive_part(r);
  }
  BPoly g;
  if (pb.is_zero()) {
    g = pa;
  } else {
    // nonzero constant in t: primitive parts are coprime
    g.coeff_t.push_back(up_const(Rat(1)));
  }
  return bp_mul_upoly(g, cont);
}

UPoly bp_resultant_t(const BPoly& a, const BPoly& b) {
  int da = a.deg_t(), db = b.deg_t();
  if (da < 0 || db < 0) return {};
  if (da == 0 && db == 0) return up_const(Rat(1));
  if (db == 0) {
    UPoly v = up_const(Rat(1));
    for (int i = 0; i < da; ++i) v = up_mul(v, b.coeff_t[0]);
    return v;
  }
  if (da == 0) {
    UPoly v = up_const(Rat(1));
    for (int i = 0; i < db; ++i) v = up_mul(v, a.coeff_t[0]);
    return v;
  }
  // Evaluation/interpolation: deg_s of the resultant is at most
  // deg_s(a)*deg_t(b) + deg_s(b)*deg_t(a).
  int bound = a.deg_s() * db + b.deg_s() * da;
  const UPoly& la = a.coeff_t.back();
  const UPoly& lb = b.coeff_t.back();
  std::vector<Rat> xs, ys;
  long candidate = 0;
  while (static_cast<int>(xs.size()) < bound + 1) {
    Rat x(candidate);
    // alternate 0, 1, -1, 2, -2, ...
    candidate = candidate <= 0 ? -candidate + 1 : -candidate;
    if (up_eval(la, x) == 0 || up_eval(lb, x) == 0) continue;  // degree must not drop
    UPoly fa = bp_eval_s(a, x);
    UPoly fb = bp_eval_s(b, x);
    xs.push_back(x);
    ys.push_back(up_resultant(fa, fb));
  }
  // Lagrange interpolation (Newton form).
  std::vector<Rat> divided = ys;
  for (size_t j = 1; j < xs.size(); ++j)
    for (size_t i = xs.size(); i-- > j;)
      divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j]);
  UPoly result;
  for (size_t i = xs.size(); i-- > 0;) {
    // result = result * (x - xs[i]) + divided[i]
    UPoly shifted(result.size() + 1, Rat(0));
    for (size_t k = 0; k < result.size(); ++k) {
      shifted[k + 1] += result[k];
      shifted[k] -= result[k] * xs[i];
    }
    shifted[0] += divided[i];
    up_trim(shifted);
    result = std::move(shifted);
  }
  return result;
}

std::string bp_to_string(const BPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < p.coeff_t.size(); ++k) {
    if (p.coeff_t[k].empty()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << up_to_string(p.coeff_t[k], "s") << ")";
    if (k >= 1) {
      os << "*t";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// dynamic evaluation over Q[s]/(m)

namespace {

struct SplitRequest {
  UPoly factor;  // proper divisor of the current modulus
};

UPoly mod_reduce(const UPoly& a, const UPoly& m) {
  UPoly q, r;
  if (a.empty()) return a;
  up_divmod(a, m, q, r);
  return r;
}

// Inverse of a modulo m; throws SplitRequest when a is a zero divisor.
UPoly mod_inverse(const UPoly& a, const UPoly& m) {
  // extended Euclid
  UPoly r0 = m, r1 = a, s0 = {}, s1 = up_const(Rat(1));
  while (!r1.empty()) {
    UPoly q, r;
    up_divmod(r0, r1, q, r);
    UPoly s2 = up_sub(s0, up_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (up_deg(r0) > 0) throw SplitRequest{r0};  // gcd(a, m) nontrivial
  if (r0.empty()) fail(ErrorCode::Internal, "inverse of zero in branch arithmetic");
  return mod_reduce(up_scale(s0, 1 / r0[0]), m);
}

using ModPoly = std::vector<UPoly>;  // poly in t over Q[s]/(m)

void mp_trim(ModPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

ModPoly mp_reduce(const BPoly& a, const UPoly& m) {
  ModPoly r;
  r.reserve(a.coeff_t.size());
  for (const UPoly& c : a.coeff_t) r.push_back(mod_reduce(c, m));
  mp_trim(r);
  return r;
}

// monic remainder-based gcd over (Q[s]/m)[t]; splits on zero divisors
ModPoly mp_gcd(ModPoly a, ModPoly b, const UPoly& m) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    // make b monic (splits if the leading coefficient is a zero divisor)
    UPoly inv = mod_inverse(b.back(), m);
    for (UPoly& c : b) c = mod_reduce(up_mul(c, inv), m);
    // a mod b
    while (static_cast<int>(a.size()) >= static_cast<int>(b.size()) && !a.empty()) {
      UPoly lead = a.back();
      size_t k = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[k + i] = mod_reduce(up_sub(a[k + i], up_mul(lead, b[i])), m);
      mp_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

std::vector<BranchGcd> branch_gcd_deg(const std::vector<BPoly>& polys, const UPoly& modulus) {
  std::vector<BranchGcd> out;
  std::vector<UPoly> stack{modulus};
  while (!stack.empty()) {
    UPoly m = std::move(stack.back());
    stack.pop_back();
    if (up_deg(m) <= 0) continue;
    try {
      ModPoly g;
      for (const BPoly& p : polys) {
        ModPoly mp = mp_reduce(p, m);
        g = g.empty() ? mp : mp_gcd(g, mp, m);
      }
      out.push_back(BranchGcd{m, static_cast<int>(g.size()) - 1});
    } catch (const SplitRequest& split) {
      UPoly q, r;
      up_divmod(m, split.factor, q, r);
      if (!r.empty() || up_deg(split.factor) <= 0 || up_deg(q) <= 0)
        fail(ErrorCode::Internal, "invalid branch split");
      stack.push_back(split.factor);
      stack.push_back(q);
    }
  }
  return out;
}

}  // namespace kwall
