#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kwall/rational.hpp"

namespace kwall {

// Ambient gradings. Bidegree(a,b) forms live on P^1 x P^1 in the variables
// (x0,x1;y0,y1); Homogeneous(k) forms live on P^3 in (x0,x1,x2,x3).
enum class GradingKind { Bidegree, Homogeneous };

struct Grading {
  GradingKind kind;
  int deg_a = 0;  // bidegree in the x-block, or the total degree
  int deg_b = 0;  // bidegree in the y-block (Bidegree only)

  static Grading bidegree(int a, int b);
  static Grading homogeneous(int d);

  bool operator==(const Grading& o) const = default;
  std::string describe() const;
  const char* var_name(int i) const;
  int parse_var(const std::string& name) const;  // -1 if not a variable of this grading
};

// Exponent vector over the 4 ambient coordinates.
using Expo = std::array<int, 4>;

inline int total_degree(const Expo& e) { return e[0] + e[1] + e[2] + e[3]; }

// Graded-lexicographic order with variable order x0 < x1 < x2 < x3
// (resp. x0 < x1 < y0 < y1): compare total degree first, then the exponent
// vector lexicographically. Used as the canonical term order everywhere.
struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

using TermMap = std::map<Expo, Rat, GrlexLess>;

// Sparse multigraded form with exact rational coefficients. Immutable by
// convention: every operation returns a fresh value. The zero form has an
// empty term map; no zero coefficient is ever stored.
struct MultiForm {
  Grading grading;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  size_t term_count() const { return terms.size(); }
};

MultiForm zero_form(const Grading& g);
MultiForm monomial_form(const Grading& g, const Expo& e, const Rat& coeff);

// Throws GradingError if any stored term violates homogeneity for the grading.
void check_homogeneous(const MultiForm& f);

// Signed sums of terms "coeff * x0^i x1^j y0^k y1^l"; factors separated by
// whitespace or '*', coefficients are "p/q" or integer literals.
MultiForm parse_form(const std::string& text, const Grading& g);

// Canonical, newline-free; terms emitted in descending graded-lex order;
// round-trips through parse_form bit-exactly.
std::string form_to_string(const MultiForm& f);

MultiForm form_add(const MultiForm& a, const MultiForm& b);
MultiForm form_sub(const MultiForm& a, const MultiForm& b);
MultiForm form_neg(const MultiForm& a);
MultiForm form_scale(const MultiForm& a, const Rat& c);
MultiForm form_mul(const MultiForm& a, const MultiForm& b);
MultiForm form_pow(const MultiForm& a, int k);
bool form_eq(const MultiForm& a, const MultiForm& b);

using Mat2 = std::array<std::array<Rat, 2>, 2>;
using Mat4 = std::array<std::array<Rat, 4>, 4>;

Mat2 mat2_identity();
Mat4 mat4_identity();
Mat4 mat4_from_blocks(const Mat2& xb, const Mat2& yb);
Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Rat mat4_det(const Mat4& a);
Mat4 mat4_inverse(const Mat4& a);  // SingularMatrix if det == 0

// Substitution x |-> M x (for Bidegree, M must be block diagonal 2x2 + 2x2).
// change_coordinates(change_coordinates(f, M1), M2) == change_coordinates(f, M1*M2).
MultiForm change_coordinates(const MultiForm& f, const Mat4& m);
MultiForm change_coordinates(const MultiForm& f, const Mat2& xblock, const Mat2& yblock);

// Canonical representative of g modulo the quadric q: rewrites every monomial
// divisible by eliminated_monomial using the relation q = 0. The eliminated
// monomial must appear in q and be extreme in q's Newton polytope (always the
// case for the diagonal/normal-form quadrics this library uses).
MultiForm reduce_mod_quadric(const MultiForm& g, const MultiForm& q, const Expo& eliminated_monomial);

}  // namespace kwall
