#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwall/forms.hpp"

namespace kwall {

// Diagonal one-parameter subgroup in a fixed coordinate frame. The optional
// frame is a coordinate change applied to forms before weights are read off.
struct OnePS {
  std::array<long long, 4> weights{0, 0, 0, 0};
  std::optional<Mat4> frame;

  bool is_trivial() const { return weights == std::array<long long, 4>{0, 0, 0, 0}; }
  // Weights must sum to zero inside each SL block: both 2-blocks for
  // Bidegree, all four entries for Homogeneous.
  bool valid_for(GradingKind kind) const;
};

long long monomial_weight(const Expo& exponents, const OnePS& sigma);

// max over the support of f of the monomial weight (the frame, if any, is
// applied first). Invariant under scaling f by a nonzero constant.
long long hm_weight(const MultiForm& f, const OnePS& sigma);

enum class Torus { SL2xSL2, SL4diag };

using LatticePoint = std::vector<long long>;

// Centered torus weights of the support monomials. For Bidegree(a,b) the
// centering is (2i-a, 2k-b) per factor; for the SL(4) torus it is 4e - d*(1,1,1,1),
// a sum-zero integer vector (the lattice scaled by 4 to stay integral).
struct WeightPolytope {
  Torus torus;
  std::vector<LatticePoint> support;  // deduplicated, sorted
  // Exact convex hull vertices: counterclockwise from the lexicographically
  // smallest vertex in the 2D case, lexicographically sorted for SL4.
  std::vector<LatticePoint> hull;
};

WeightPolytope weight_polytope(const MultiForm& f, Torus torus,
                               const std::optional<Mat4>& frame = std::nullopt);

// Pairing used by the polytope route; for SL2xSL2 sigma_reduced = (a,b) from
// sigma = (a,-a,b,-b), for SL4 it is sigma itself (and the pairing is 4x the
// monomial weight because of the scaled centering).
long long polytope_max_weight(const WeightPolytope& wp, const std::vector<long long>& sigma_reduced);

struct StabilityResult {
  bool semistable = false;
  std::optional<OnePS> certificate;  // verified destabilizer when unstable
};

// Torus-(semi)stability with respect to the given frame: semistable iff the
// origin lies in the weight polytope (boundary included). Decides for one
// frame only; no claim over all maximal tori.
StabilityResult torus_semistable(const MultiForm& f, Torus torus,
                                 const std::optional<Mat4>& frame = std::nullopt);

struct InstabilityMeasure {
  Rat dist2;                  // squared Euclidean distance from the origin to the hull
  std::vector<Rat> nearest;   // the minimizing point
};

InstabilityMeasure instability_measure(const MultiForm& f, Torus torus,
                                       const std::optional<Mat4>& frame = std::nullopt);

// Exact minimum-norm point of the convex hull of rational points (Wolfe's
// algorithm). Exposed for reuse and for oracle tests.
struct MinNormResult {
  std::vector<Rat> point;
  Rat dist2;
};
MinNormResult min_norm_point(const std::vector<std::vector<Rat>>& pts);

// Heuristic frame scan: decides stability with respect to each candidate
// frame and reports the first destabilized one. Finding none is NOT a
// semistability proof over all of SL; it only exhausts the supplied frames.
struct FrameScanResult {
  bool destabilized = false;
  int frame_index = -1;
  std::optional<OnePS> certificate;
};
FrameScanResult scan_frames(const MultiForm& f, Torus torus, const std::vector<Mat4>& frames);

// Frame adapted to a point of P^1 x P^1: the block coordinate change whose
// first columns are the point, so the point becomes the torus-fixed point
// ([1:0],[1:0]). Candidate frames for scan_frames are usually built from
// special points of the curve (singular points, intersections of components).
Mat4 adapted_frame(const std::array<Rat, 2>& xpoint, const std::array<Rat, 2>& ypoint);

}  // namespace kwall
