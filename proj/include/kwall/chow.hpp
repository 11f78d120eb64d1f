#pragma once

#include <array>
#include <map>
#include <string>

#include "kwall/bivariate.hpp"  // UPoly doubles as Q[c]
#include "kwall/rational.hpp"

namespace kwall {

// Truncated formal intersection ring used for the CM class computations.
//
//   QuadricBundle: symbols (h, eta, xi) on P^3 x P(E_d); the only relation is
//                  h^4 = 0. eta and xi are base symbols and never truncate.
//   P11Product:    symbols (h1, h2, H) on P^1 x P^1 x P_(d,d); relations
//                  h1^2 = h2^2 = 0, H free.
//
// Coefficients are exact polynomials in the weight c (UPoly over Q).
enum class Ambient { QuadricBundle, P11Product };

using SymExpo = std::array<int, 3>;

struct ChowClass {
  Ambient ambient;
  std::map<SymExpo, UPoly> terms;  // no zero polynomials stored

  bool is_zero() const { return terms.empty(); }
};

ChowClass chow_zero(Ambient a);
// coeff * first^e0 * second^e1 * third^e2 (with the fiber relations applied)
ChowClass chow_term(Ambient a, const SymExpo& e, const UPoly& coeff);
ChowClass chow_add(const ChowClass& a, const ChowClass& b);
ChowClass chow_neg(const ChowClass& a);
ChowClass chow_scale(const ChowClass& a, const UPoly& c);
ChowClass chow_mul(const ChowClass& a, const ChowClass& b);
ChowClass chow_pow(const ChowClass& a, int k);
bool chow_eq(const ChowClass& a, const ChowClass& b);
// Substitute a rational value for c in every coefficient.
ChowClass chow_eval_c(const ChowClass& a, const Rat& c);
std::string chow_to_string(const ChowClass& a);

// Fiber integration: extract the full-fiber-degree part (h^3 for the quadric
// bundle, h1*h2 for the product) and strip the fiber symbols. Terms of
// deficient or excessive fiber degree integrate to zero.
ChowClass integrate_fiber(const ChowClass& a);

enum class FamilyKind { QuadricInP3, P1P1trivial };

// Pushforward along the universal family: multiply by the family class
// (2h + eta for the quadric bundle; the product family is the whole ambient)
// and integrate the fiber.
ChowClass pushforward_family(const ChowClass& a, FamilyKind family);

// CM class of the family of (quadric, degree-d section) pairs over P(E_d),
// as -pushforward((relative anticanonical minus c times the divisor)^3).
// The result is a(c)*eta + b(c)*xi with a(c) = (2-dc)^2(dc+4), b(c) = 6c(2-dc)^2.
struct CmClass {
  UPoly eta_coeff;
  UPoly xi_coeff;
};
CmClass cm_class_pe(int d);

// CM class of the family of (d,d) curves over P_(d,d): a multiple of H.
UPoly cm_class_p44(int d);

// Exact proportionality of the CM class against eta + t(c)*xi with
// t(c) = 6c/(dc+4); returns the positive scalar rho. NotProportional is an
// engine-bug guard and must never fire.
struct Proportionality {
  Rat rho;
  Rat t;
};
Proportionality proportionality_check(int d, const Rat& c);

}  // namespace kwall
