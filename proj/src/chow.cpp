#include "kwall/chow.hpp"

#include <sstream>

namespace kwall {

namespace {

bool truncated(Ambient a, const SymExpo& e) {
  if (a == Ambient::QuadricBundle) return e[0] >= 4;
  return e[0] >= 2 || e[1] >= 2;
}

void insert(ChowClass& c, const SymExpo& e, const UPoly& coeff) {
  if (coeff.empty() || truncated(c.ambient, e)) return;
  auto it = c.terms.find(e);
  if (it == c.terms.end()) {
    c.terms.emplace(e, coeff);
  } else {
    it->second = up_add(it->second, coeff);
    if (it->second.empty()) c.terms.erase(it);
  }
}

const char* symbol_name(Ambient a, int i) {
  static const char* qb[3] = {"h", "eta", "xi"};
  static const char* pp[3] = {"h1", "h2", "H"};
  return a == Ambient::QuadricBundle ? qb[i] : pp[i];
}

}  // namespace

ChowClass chow_zero(Ambient a) { return ChowClass{a, {}}; }

ChowClass chow_term(Ambient a, const SymExpo& e, const UPoly& coeff) {
  for (int v : e)
    if (v < 0) fail(ErrorCode::Range, "negative symbol exponent");
  ChowClass c{a, {}};
  insert(c, e, coeff);
  return c;
}

ChowClass chow_add(const ChowClass& a, const ChowClass& b) {
  if (a.ambient != b.ambient) fail(ErrorCode::AmbientMismatch, "cannot add classes from different ambients");
  ChowClass r = a;
  for (const auto& [e, c] : b.terms) insert(r, e, c);
  return r;
}

ChowClass chow_neg(const ChowClass& a) {
  ChowClass r = a;
  for (auto& [e, c] : r.terms) c = up_scale(c, Rat(-1));
  return r;
}

ChowClass chow_scale(const ChowClass& a, const UPoly& c) {
  ChowClass r{a.ambient, {}};
  for (const auto& [e, v] : a.terms) insert(r, e, up_mul(v, c));
  return r;
}

ChowClass chow_mul(const ChowClass& a, const ChowClass& b) {
  if (a.ambient != b.ambient) fail(ErrorCode::AmbientMismatch, "cannot multiply classes from different ambients");
  ChowClass r{a.ambient, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      SymExpo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      insert(r, e, up_mul(ca, cb));
    }
  return r;
}

ChowClass chow_pow(const ChowClass& a, int k) {
  if (k < 0) fail(ErrorCode::Range, "negative power of a class");
  ChowClass r = chow_term(a.ambient, SymExpo{0, 0, 0}, up_const(Rat(1)));
  for (int i = 0; i < k; ++i) r = chow_mul(r, a);
  return r;
}

bool chow_eq(const ChowClass& a, const ChowClass& b) {
  return a.ambient == b.ambient && a.terms == b.terms;
}

ChowClass chow_eval_c(const ChowClass& a, const Rat& c) {
  ChowClass r{a.ambient, {}};
  for (const auto& [e, v] : a.terms) insert(r, e, up_const(up_eval(v, c)));
  return r;
}

std::string chow_to_string(const ChowClass& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << up_to_string(v, "c") << ")";
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      os << "*" << symbol_name(a.ambient, i);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

ChowClass integrate_fiber(const ChowClass& a) {
  ChowClass r{a.ambient, {}};
  for (const auto& [e, c] : a.terms) {
    if (a.ambient == Ambient::QuadricBundle) {
      if (e[0] != 3) continue;  // only h^3 carries fiber volume
      insert(r, SymExpo{0, e[1], e[2]}, c);
    } else {
      if (e[0] != 1 || e[1] != 1) continue;  // only h1*h2
      insert(r, SymExpo{0, 0, e[2]}, c);
    }
  }
  return r;
}

ChowClass pushforward_family(const ChowClass& a, FamilyKind family) {
  if (family == FamilyKind::QuadricInP3) {
    if (a.ambient != Ambient::QuadricBundle)
      fail(ErrorCode::AmbientMismatch, "QuadricInP3 pushforward needs the quadric-bundle ambient");
    ChowClass family_class =
        chow_add(chow_term(a.ambient, SymExpo{1, 0, 0}, up_const(Rat(2))),
                 chow_term(a.ambient, SymExpo{0, 1, 0}, up_const(Rat(1))));
    return integrate_fiber(chow_mul(a, family_class));
  }
  if (a.ambient != Ambient::P11Product)
    fail(ErrorCode::AmbientMismatch, "P1P1trivial pushforward needs the product ambient");
  return integrate_fiber(a);
}

CmClass cm_class_pe(int d) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  // relative class (2 - dc) h - eta - c xi
  UPoly two_minus_dc{Rat(2), Rat(-d)};
  UPoly minus_c{Rat(0), Rat(-1)};
  ChowClass cls = chow_term(Ambient::QuadricBundle, SymExpo{1, 0, 0}, two_minus_dc);
  cls = chow_add(cls, chow_term(Ambient::QuadricBundle, SymExpo{0, 1, 0}, up_const(Rat(-1))));
  cls = chow_add(cls, chow_term(Ambient::QuadricBundle, SymExpo{0, 0, 1}, minus_c));
  ChowClass pushed = chow_neg(pushforward_family(chow_pow(cls, 3), FamilyKind::QuadricInP3));
  CmClass out;
  for (const auto& [e, c] : pushed.terms) {
    if (e == SymExpo{0, 1, 0}) out.eta_coeff = c;
    else if (e == SymExpo{0, 0, 1}) out.xi_coeff = c;
    else fail(ErrorCode::Internal, "unexpected symbol in the CM class");
  }
  return out;
}

UPoly cm_class_p44(int d) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  UPoly two_minus_dc{Rat(2), Rat(-d)};
  UPoly minus_c{Rat(0), Rat(-1)};
  ChowClass cls = chow_term(Ambient::P11Product, SymExpo{1, 0, 0}, two_minus_dc);
  cls = chow_add(cls, chow_term(Ambient::P11Product, SymExpo{0, 1, 0}, two_minus_dc));
  cls = chow_add(cls, chow_term(Ambient::P11Product, SymExpo{0, 0, 1}, minus_c));
  ChowClass pushed = chow_neg(pushforward_family(chow_pow(cls, 3), FamilyKind::P1P1trivial));
  UPoly out;
  for (const auto& [e, c] : pushed.terms) {
    if (e == SymExpo{0, 0, 1}) out = c;
    else fail(ErrorCode::Internal, "unexpected symbol in the product CM class");
  }
  return out;
}

Proportionality proportionality_check(int d, const Rat& c) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (c < 0 || c >= rat_q(2, d)) fail(ErrorCode::Range, "c must lie in [0, 2/d)");
  CmClass cm = cm_class_pe(d);
  Rat a = up_eval(cm.eta_coeff, c);
  Rat b = up_eval(cm.xi_coeff, c);
  if (a <= 0) fail(ErrorCode::NotProportional, "eta coefficient is not positive");
  Rat t = b / a;
  if (t != Rat(6) * c / (Rat(d) * c + 4))
    fail(ErrorCode::NotProportional, "slope does not match 6c/(dc+4)");
  return Proportionality{a, t};
}

}  // namespace kwall
