#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kwall/rational.hpp"

namespace kwall {

// Cyclic quotient T-singularity of type 1/(e n^2) (1, e n a - 1), gcd(a,n)=1.
struct QuotientSing {
  long e = 1;
  long n = 1;
  long a = 1;

  void validate() const;
  long order() const { return e * n * n; }
  long index() const { return n; }
  long milnor() const { return e - 1; }
  // acting weight on the second coordinate of the smooth cover
  long cover_weight() const { return e * n * a - 1; }
  std::string type_string() const;  // "1/r(1,b)"
};

// Monomial valuation on the smooth cover with weights (w1, w2) on the chart
// coordinates and value wD on the boundary divisor. A = w1 + w2, vol = 1/(w1 w2).
struct MonomialValuation {
  long w1 = 1;
  long w2 = 1;
  long wD = 0;
};

// Exact (w1 + w2 - c*wD)^2 / (w1*w2). RangeError when c < 0 or the adjusted
// log discrepancy is not positive.
Rat nvol_monomial_bound(const MonomialValuation& v, const Rat& c);

// Normalized volume of a quotient singularity of the given group order: 4/order.
Rat nvol_quotient(long order);

// The K-semistability volume obstruction on surfaces: 8(1 - dc/2)^2 <= (9/4)*nvol.
// A false value certifies K-instability of any pair carrying that singularity
// at that weight.
bool global_bound_holds(int d, const Rat& c, const Rat& nvol);

enum class IndexBoundCase { MuZero, MuOne, OddDEvenIndex };

// Exact Gorenstein-index bounds; the sqrt(2)-floors are computed on squares
// (largest k with 2 k^2 (2-cd)^2 <= 9, resp. 8 k^2 (2-cd)^2 <= 9), never in
// floating point. Caps: d+1 (MuZero), d (MuOne), 2d-2 (OddDEvenIndex; odd d only).
long index_bound(int d, const Rat& c, IndexBoundCase which);

// All (i,j) with i+j <= max_total satisfying the orbifold weight congruence of
// the boundary divisor:
//   d even: i + (ena-1) j == (d/2) e n a   (mod e n^2)
//   d odd:  2(i + (ena-1) j) == d e n a    (mod e n^2)
// sorted by (i+j, i).
std::vector<std::pair<int, int>> congruence_monomials(const QuotientSing& sing, int d, int max_total);

// Exclusion search over an open rational weight window.
struct ExclusionCandidate {
  int i = 0, j = 0;
  std::string status;    // "killed-window" | "killed-order-valuation" | "killed-refined-valuation" | "survived"
  std::string detail;    // the constraint that emptied the window, when killed
  long refined_wD = 0;   // lower bound for the refined monomial valuation
  std::optional<Rat> witness_c;
};

struct ExclusionResult {
  bool excluded = false;
  int degree_bound = 0;          // orders 0..degree_bound were enumerated
  bool no_admissible = false;    // congruence left no candidate below the bound
  std::vector<ExclusionCandidate> candidates;
  // first surviving (i, j, c) when inconclusive
  std::optional<ExclusionCandidate> witness;
};

// Mechanized exclusion: every congruence-admissible minimal monomial (i,j) is
// tested against the volume inequality sqrt(32 e) n (1-cd/2) <= 3 (A - c*wD)/sqrt(w1 w2)
// for the order valuation (1,1,i+j) and the refined valuation (1, ena-1, wD'),
// wD' the least admissible weighted value of order >= i+j. Excluded iff no
// admissible candidate admits a rational weight in the window satisfying both.
ExclusionResult exclude_singularity(const QuotientSing& sing, int d, const Rat& c_lo, const Rat& c_hi);

struct MarkovTriple {
  long a = 1, b = 1, c = 1;
  bool operator==(const MarkovTriple&) const = default;
  auto operator<=>(const MarkovTriple&) const = default;
  bool satisfies_equation() const;
};

// All solutions of a^2 + b^2 + 2c^2 = 4abc with every entry <= bound, via the
// Vieta-jumping tree rooted at (1,1,1); (a,b) are interchangeable and results
// are canonicalized with a <= b.
std::vector<MarkovTriple> markov_enumerate(long bound);
// Independent oracle: direct triple scan (for small bounds).
std::vector<MarkovTriple> markov_brute_force(long bound);
// Vieta neighbors (a-slot, b-slot, c-slot), canonicalized.
std::array<MarkovTriple, 3> markov_neighbors(const MarkovTriple& t);

// Sorted weight triple (a^2, b^2, 2c^2) of the associated weighted projective plane.
std::array<long, 3> weighted_projective_from_markov(const MarkovTriple& t);

// Recognize 1/r(1,b) as a T-singularity 1/(en^2)(1, ena-1); returns the unique
// (e,n,a) when it exists.
std::optional<QuotientSing> recognize_T_singularity(long r, long b);

// Log canonical threshold of a cataloged plane-curve singularity from its
// Newton diagram; exact, with the Skoda bound 2/multiplicity alongside.
struct LctResult {
  Rat lct;
  Rat skoda_bound;
  int multiplicity = 0;
  bool quasihomogeneous = false;  // all monomials on one weight line
  // true when the diagonal-crossing face is an always-nondegenerate binomial
  // or monomial; parameterized or longer faces keep this false
  bool nondegenerate_certain = false;
  std::string caveat;
};

struct PlaneCurveGerm {
  std::string label;
  std::vector<std::pair<int, int>> monomials;
  std::vector<bool> has_parameter;  // aligned with monomials
};

LctResult lct_from_monomials(const PlaneCurveGerm& germ);
// Catalog lookup by label: A_k, E_12, E_13, E_14, J_{4,inf}, J_{3,0},
// "quadruple conic", "triple conic + transverse conic".
LctResult lct_catalog(const std::string& label);
PlaneCurveGerm catalog_germ(const std::string& label);

}  // namespace kwall
