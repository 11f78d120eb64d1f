#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwall/rational.hpp"

namespace kwall {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
// Invariant: no trailing zeros (the zero polynomial is the empty vector).
using UPoly = std::vector<Rat>;

void up_trim(UPoly& p);
int up_deg(const UPoly& p);  // -1 for the zero polynomial
UPoly up_const(const Rat& c);
UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, const Rat& c);
UPoly up_derivative(const UPoly& a);
Rat up_eval(const UPoly& a, const Rat& x);
// Division a = q*b + r over Q; b nonzero.
void up_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
// Monic gcd (1 for coprime, 0 iff both zero).
UPoly up_gcd(UPoly a, UPoly b);
UPoly up_squarefree_part(const UPoly& a);
// Resultant via the Euclidean PRS identity.
Rat up_resultant(const UPoly& a, const UPoly& b);
std::string up_to_string(const UPoly& p, const std::string& var);

// Bivariate polynomial over Q viewed as a polynomial in t whose coefficients
// live in Q[s]: coeff_t[k] is the coefficient of t^k.
struct BPoly {
  std::vector<UPoly> coeff_t;

  bool is_zero() const { return coeff_t.empty(); }
  int deg_t() const { return static_cast<int>(coeff_t.size()) - 1; }
  int deg_s() const;
};

void bp_trim(BPoly& p);
BPoly bp_from_const(const UPoly& c);
BPoly bp_add(const BPoly& a, const BPoly& b);
BPoly bp_sub(const BPoly& a, const BPoly& b);
BPoly bp_mul(const BPoly& a, const BPoly& b);
BPoly bp_mul_upoly(const BPoly& a, const UPoly& c);
BPoly bp_deriv_t(const BPoly& a);
BPoly bp_deriv_s(const BPoly& a);
BPoly bp_transpose(const BPoly& a);  // swap the roles of s and t
UPoly bp_eval_s(const BPoly& a, const Rat& s0);  // specialize s, poly in t
// Content w.r.t. t: monic gcd in Q[s] of all t-coefficients.
UPoly bp_content_t(const BPoly& a);
// Exact division by a Q[s] polynomial dividing every coefficient.
BPoly bp_divide_content(const BPoly& a, const UPoly& c);
// gcd in Q[s,t] (content times primitive-part gcd); normalized so the
// leading coefficient polynomial is monic.
BPoly bp_gcd(const BPoly& a, const BPoly& b);
// Res_t(a, b) in Q[s], computed by evaluation/interpolation.
UPoly bp_resultant_t(const BPoly& a, const BPoly& b);
std::string bp_to_string(const BPoly& p);

// Dynamic-evaluation gcd: the monic gcd of the given polynomials in
// (Q[s]/(modulus))[t], with the squarefree modulus split whenever a
// zero-divisor shows up. Each returned branch carries the branch modulus and
// the t-degree of the gcd over that branch; every root of a branch modulus
// realizes exactly that gcd degree.
struct BranchGcd {
  UPoly modulus;
  int gcd_deg_t;
};
std::vector<BranchGcd> branch_gcd_deg(const std::vector<BPoly>& polys, const UPoly& modulus);

}  // namespace kwall
