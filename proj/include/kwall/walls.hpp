#pragma once

#include <string>
#include <vector>

#include "kwall/rational.hpp"

namespace kwall {

// One row of the wall-crossing singularity catalog (indices 1..7): the wall
// value, the generic curve singularity on the minus side (label plus local
// equation where one applies) and the replacement singularity on the plus side.
struct CatalogRow {
  int index;
  Rat c;
  std::string minus_label;
  std::string minus_equation;  // empty for the prose-only rows
  std::string plus_label;
};

struct WallTable {
  int d;
  std::vector<Rat> c_walls;
  std::vector<Rat> t_walls;
  std::vector<Rat> beta_walls;
  std::vector<CatalogRow> rows;
};

// The full aligned 8-wall table for d = 4. UnknownWalls for any other d.
const WallTable& wall_table(int d);

// t = 6c/(dc+4), strictly increasing on [0, 2/d].
Rat slope_from_coeff(const Rat& c, int d);

// beta = min{1, (1-2c)/(6c)} on (0, 1/2].
Rat beta_from_coeff(const Rat& c);

// t = 1/(4*beta+2) on [0, 1], with values in [1/6, 1/2].
Rat slope_from_beta(const Rat& beta);

// t = (m-3)^2 / (2(m^2-4m+5)) for integer m >= 4.
Rat slope_from_hilbert(long m);

struct Chamber {
  enum Kind { Open, Wall } kind;
  int index;  // Open(i): between wall i and wall i+1 (wall 0 meaning c=0); Wall(i): at wall i
  Rat lo;
  Rat hi;  // equal to lo for walls
};

// Locate c in the wall structure: exact chamber for d = 4; for other d only
// the first wall c1 = 1/(2d) is known and anything beyond raises UnknownWalls.
Chamber chamber_of(const Rat& c, int d);

// Table row i for 1 <= i <= 7.
const CatalogRow& catalog_row(int i);

}  // namespace kwall
