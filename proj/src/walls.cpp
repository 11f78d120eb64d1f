#include "kwall/walls.hpp"

#include <sstream>

namespace kwall {

namespace {

WallTable build_d4_table() {
  WallTable t;
  t.d = 4;
  t.c_walls = {rat_q(1, 8), rat_q(1, 5), rat_q(1, 4), rat_q(2, 7), rat_q(5, 16), rat_q(1, 3), rat_q(4, 11), rat_q(1, 2)};
  t.t_walls = {rat_q(1, 6), rat_q(1, 4), rat_q(3, 10), rat_q(1, 3), rat_q(5, 14), rat_q(3, 8), rat_q(2, 5), rat_q(1, 2)};
  t.beta_walls = {Rat(1), rat_q(1, 2), rat_q(1, 3), rat_q(1, 4), rat_q(1, 5), rat_q(1, 6), rat_q(1, 8), Rat(0)};
  t.rows = {
      {1, rat_q(1, 8), "quadruple conic", "", "v not in D"},
      {2, rat_q(1, 5), "triple conic + transverse conic", "", "A_1"},
      {3, rat_q(1, 4), "J_{4,inf}", "x^3 + x^2 y^4", "A_2"},
      {4, rat_q(2, 7), "J_{3,0}", "x^3 + b1 x^2 y^3 + y^9 + b2 x y^7", "A_3"},
      {5, rat_q(5, 16), "E_14", "x^3 + y^8 + a x y^6", "A_4"},
      {6, rat_q(1, 3), "E_13", "x^3 + x y^5 + a y^8", "A_5"},
      {7, rat_q(4, 11), "E_12", "x^3 + y^7 + a x y^5", "A_7"},
  };
  return t;
}

const WallTable& d4_table() {
  static const WallTable t = build_d4_table();
  return t;
}

}  // namespace

const WallTable& wall_table(int d) {
  if (d != 4) fail(ErrorCode::UnknownWalls, "full wall tables are only known for d = 4");
  return d4_table();
}

Rat slope_from_coeff(const Rat& c, int d) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (c < 0 || c > rat_q(2, d)) fail(ErrorCode::Range, "c must lie in [0, 2/d]");
  return Rat(6) * c / (Rat(d) * c + 4);
}

Rat beta_from_coeff(const Rat& c) {
  if (c <= 0 || c > rat_q(1, 2)) fail(ErrorCode::Range, "c must lie in (0, 1/2]");
  Rat v = (Rat(1) - 2 * c) / (Rat(6) * c);
  return v > 1 ? Rat(1) : v;
}

Rat slope_from_beta(const Rat& beta) {
  if (beta < 0 || beta > 1) fail(ErrorCode::Range, "beta must lie in [0, 1]");
  return Rat(1) / (Rat(4) * beta + 2);
}

Rat slope_from_hilbert(long m) {
  if (m < 4) fail(ErrorCode::Range, "Hilbert index m must be at least 4");
  Rat num(m - 3);
  num *= Rat(m - 3);
  Rat den(2 * (m * m - 4 * m + 5));
  return num / den;
}

Chamber chamber_of(const Rat& c, int d) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (c <= 0 || c >= rat_q(2, d)) fail(ErrorCode::Range, "c must lie in (0, 2/d)");
  if (d == 4) {
    const WallTable& t = d4_table();
    Rat prev(0);
    for (size_t i = 0; i < t.c_walls.size(); ++i) {
      if (c == t.c_walls[i]) return Chamber{Chamber::Wall, static_cast<int>(i + 1), c, c};
      if (c < t.c_walls[i]) return Chamber{Chamber::Open, static_cast<int>(i), prev, t.c_walls[i]};
      prev = t.c_walls[i];
    }
    fail(ErrorCode::Internal, "wall list does not cover (0, 1/2)");
  }
  Rat c1 = rat_q(1, 2 * d);
  if (c < c1) return Chamber{Chamber::Open, 0, Rat(0), c1};
  if (c == c1) return Chamber{Chamber::Wall, 1, c1, c1};
  std::ostringstream os;
  os << "only the first wall 1/" << 2 * d << " is known for d = " << d;
  fail(ErrorCode::UnknownWalls, os.str());
}

const CatalogRow& catalog_row(int i) {
  if (i < 1 || i > 7) fail(ErrorCode::Range, "catalog rows are indexed 1..7");
  return d4_table().rows[i - 1];
}

}  // namespace kwall
