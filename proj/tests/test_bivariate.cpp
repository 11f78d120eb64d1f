#include <doctest.h>

#include <random>

#include "kwall/bivariate.hpp"

using namespace kwall;

namespace {

UPoly up_random(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> deg(0, maxdeg), coeff(-6, 6);
  UPoly p(deg(rng) + 1);
  for (Rat& c : p) c = Rat(coeff(rng));
  if (p.back() == 0) p.back() = Rat(1);
  return p;
}

// Sylvester-determinant resultant, the independent oracle: fraction-free it is
// not, plain rational Gaussian elimination on the Sylvester matrix.
Rat sylvester_resultant(const UPoly& f, const UPoly& g) {
  int df = up_deg(f), dg = up_deg(g);
  if (df < 0 || dg < 0) return Rat(0);
  int n = df + dg;
  if (n == 0) return Rat(1);
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int r = 0; r < dg; ++r)
    for (int i = 0; i <= df; ++i) m[r][r + df - i] = f[i];
  for (int r = 0; r < df; ++r)
    for (int i = 0; i <= dg; ++i) m[dg + r][r + dg - i] = g[i];
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f2 = m[r][col] / m[col][col];
      for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f2 * m[col][c2];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("univariate division and gcd") {
  // (x^2 - 1) = (x - 1)(x + 1)
  UPoly f{Rat(-1), Rat(0), Rat(1)};
  UPoly g{Rat(-1), Rat(1)};
  UPoly q, r;
  up_divmod(f, g, q, r);
  CHECK(r.empty());
  CHECK(q == UPoly{Rat(1), Rat(1)});
  CHECK(up_gcd(f, g) == UPoly{Rat(-1), Rat(1)});  // monic x - 1
  CHECK(up_gcd(UPoly{}, UPoly{}).empty());
  UPoly sq = up_mul(g, up_mul(g, UPoly{Rat(2), Rat(1)}));  // (x-1)^2 (x+2)
  UPoly sf = up_squarefree_part(sq);
  CHECK(up_deg(sf) == 2);
  CHECK(up_eval(sf, Rat(1)) == 0);
  CHECK(up_eval(sf, Rat(-2)) == 0);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 60; ++iter) {
    UPoly f = up_random(rng, 5), g = up_random(rng, 4);
    CHECK(up_resultant(f, g) == sylvester_resultant(f, g));
  }
  // common root makes it vanish
  UPoly f{Rat(-2), Rat(1)};                       // x - 2
  UPoly g = up_mul(f, UPoly{Rat(1), Rat(3)});     // (x-2)(3x+1)
  CHECK(up_resultant(f, g) == 0);
}

TEST_CASE("bivariate resultant via interpolation") {
  // F = t^2 - s, G = t - 1: Res_t = 1 - s
  BPoly F, G;
  F.coeff_t = {UPoly{Rat(0), Rat(-1)}, UPoly{}, UPoly{Rat(1)}};
  G.coeff_t = {UPoly{Rat(-1)}, UPoly{Rat(1)}};
  UPoly r = bp_resultant_t(F, G);
  CHECK(r == UPoly{Rat(1), Rat(-1)});

  // random specialization check
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    BPoly A, B;
    A.coeff_t.resize(3);
    B.coeff_t.resize(2);
    for (auto& c : A.coeff_t) c = up_random(rng, 2);
    for (auto& c : B.coeff_t) c = up_random(rng, 2);
    bp_trim(A);
    bp_trim(B);
    if (A.deg_t() < 1 || B.deg_t() < 1) continue;
    UPoly res = bp_resultant_t(A, B);
    // evaluate where neither leading coefficient vanishes
    for (long s0 = 20; s0 < 23; ++s0) {
      Rat x(s0);
      if (up_eval(A.coeff_t.back(), x) == 0 || up_eval(B.coeff_t.back(), x) == 0) continue;
      CHECK(up_eval(res, x) == up_resultant(bp_eval_s(A, x), bp_eval_s(B, x)));
    }
  }
}

TEST_CASE("bivariate gcd") {
  // (s*t - 1)(t + s) and (s*t - 1)(t - s): gcd is s*t - 1 up to normalization
  BPoly st1, tps, tms;
  st1.coeff_t = {UPoly{Rat(-1)}, UPoly{Rat(0), Rat(1)}};
  tps.coeff_t = {UPoly{Rat(0), Rat(1)}, UPoly{Rat(1)}};
  tms.coeff_t = {UPoly{Rat(0), Rat(-1)}, UPoly{Rat(1)}};
  BPoly g = bp_gcd(bp_mul(st1, tps), bp_mul(st1, tms));
  CHECK(g.deg_t() == 1);
  // divides both: check by specialization at s = 3
  UPoly gs = bp_eval_s(g, Rat(3));
  UPoly f1 = bp_eval_s(bp_mul(st1, tps), Rat(3));
  UPoly q, r;
  up_divmod(f1, gs, q, r);
  CHECK(r.empty());
  // content is carried: gcd of s*(t+1) and s*(t-1) is s
  BPoly a, b;
  a.coeff_t = {UPoly{Rat(0), Rat(1)}, UPoly{Rat(0), Rat(1)}};
  b.coeff_t = {UPoly{Rat(0), Rat(-1)}, UPoly{Rat(0), Rat(1)}};
  BPoly gc = bp_gcd(a, b);
  CHECK(gc.deg_t() == 0);
  CHECK(up_deg(gc.coeff_t[0]) == 1);
}

TEST_CASE("branch gcd with dynamic splitting") {
  // F = t^2 - s^2, F_t = 2t over modulus s*(s-1)(s+1): at s=0 the gcd is t,
  // elsewhere it is 1 -> the modulus must split
  BPoly F;
  F.coeff_t = {UPoly{Rat(0), Rat(0), Rat(-1)}, UPoly{}, UPoly{Rat(1)}};
  BPoly Ft = bp_deriv_t(F);
  UPoly m = up_mul(UPoly{Rat(0), Rat(1)}, up_mul(UPoly{Rat(-1), Rat(1)}, UPoly{Rat(1), Rat(1)}));
  auto branches = branch_gcd_deg({F, Ft}, m);
  bool found_deg1 = false, found_deg0 = false;
  for (const auto& br : branches) {
    if (br.gcd_deg_t >= 1) {
      found_deg1 = true;
      // that branch modulus must vanish at s=0
      CHECK(up_eval(br.modulus, Rat(0)) == 0);
    } else {
      found_deg0 = true;
    }
  }
  CHECK(found_deg1);
  CHECK(found_deg0);
}
