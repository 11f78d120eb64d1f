#pragma once

#include <string>

#include "kwall/bivariate.hpp"
#include "kwall/forms.hpp"

namespace kwall {

// Chart-wise smoothness decision for a curve f = 0 of bidegree (d,d) on
// P^1 x P^1, exact over the algebraic closure. Charts are indexed 0..3 as
// (x0=1,y0=1), (x0=1,y1=1), (x1=1,y0=1), (x1=1,y1=1); chart coordinates are
// s (the remaining x variable) and t (the remaining y variable).
struct SmoothnessResult {
  bool smooth = false;
  // For singular curves: "non-reduced", "line-intersection" or "singular-point".
  std::string reason;
  int chart = -1;
  // Univariate eliminant in s whose roots certify the s-coordinates of
  // witnesses (for line intersections, the lines themselves).
  std::string eliminant;
};

// Dehomogenization of a bidegree form on the given chart.
BPoly chart_poly(const MultiForm& f, int chart);

SmoothnessResult is_smooth_curve(const MultiForm& f);

}  // namespace kwall
