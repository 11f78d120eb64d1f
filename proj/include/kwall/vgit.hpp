#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kwall/hm.hpp"

namespace kwall {

// Mixing data for the slope-t polarization on pairs (quadric, degree-d section).
struct SlopePolarization {
  int d;
  Rat t;
  Rat delta;
};

struct RestrictedPolarization {
  Rat eta_coeff;  // always 1
  Rat xi_coeff;   // always t
  Rat mix_base;   // coefficient of (eta + delta*xi)
  Rat mix_chow;   // coefficient of the extended Chow class (d*eta + 2*xi)
};

// The polarization restricted to the complete-intersection locus is eta + t*xi;
// the mixing coefficients are returned for audit. RangeError when delta or t
// leave their legal ranges (0 < delta < 2/(3d), delta < t <= 2/d).
RestrictedPolarization restricted_polarization(const SlopePolarization& pol);

// eta + t*xi is ample iff 0 < t < 1/(d-1).
bool ample_range(int d, const Rat& t);

struct SlopeInterval {
  bool empty = true;
  Rat lo, hi;
  bool lo_open = true, hi_open = true;

  bool contains(const Rat& t) const;
  // chamber (a,b) open: covered iff lo <= a and b <= hi
  bool covers_open(const Rat& a, const Rat& b) const;
  std::string to_string() const;
};

// A 1-PS destabilization certificate for the pair ([q], [g]) with the bound
// mu(q,sigma) + t*mu(g,sigma), affine in the slope t.
struct DestabCertificate {
  MultiForm q;
  MultiForm g;
  OnePS sigma;
  long long weight_q = 0;  // mu(q, sigma)
  long long weight_g = 0;  // mu(g, sigma)
  std::string note;

  Rat bound_at(const Rat& t) const { return rat_of(weight_q) + t * rat_of(weight_g); }
};

// Builds and validates a certificate: recomputes both weights through sigma's
// frame and checks degrees and the SL(4) trace-zero condition.
DestabCertificate make_certificate(const MultiForm& q, const MultiForm& g, const OnePS& sigma, int d);

// mu(q,sigma) + t*mu(g,sigma); a negative value certifies instability at slope t.
Rat vgit_mu_bound(const MultiForm& q, const MultiForm& g, const OnePS& sigma, const Rat& t);

// Exact {t : bound(t) < 0} intersected with (0, 2/d].
SlopeInterval destabilizing_interval(const DestabCertificate& cert, int d);

// Exact congruence diagonalization of the quadric's Gram matrix:
// change_coordinates(q, frame) = sum diag[i] * x_i^2.
struct QuadricDiagonalization {
  Mat4 frame;
  std::array<Rat, 4> diag;
  int rank;
};
QuadricDiagonalization diagonalize_quadric(const MultiForm& q);
int quadric_rank(const MultiForm& q);

enum class QuadricNormalForm { RankOne, RankTwo, RankThree, RankFour };
// x0^2; x0*x1; x1*x2 - x3^2 (inside Q[x1,x2,x3]); x0*x1 - x2*x3.
MultiForm quadric_normal_form(QuadricNormalForm kind);

// Dense degree-d section with distinct nonzero coefficients, deterministic in
// the seed.
MultiForm generic_section(int d, std::uint64_t seed);

// Certificate for rank(q) <= 2 with a generic section: sigma = (-1,-1,1,1) in
// the diagonalizing frame, giving the bound -2 + t*d. Genericity (a monomial
// of g supported on the last two frame coordinates) is verified per instance.
DestabCertificate low_rank_certificate(const MultiForm& q, const MultiForm& g, int d);

// Certificate for singular rank-3 q: sigma = (3,-1,-1,-1) in a frame placing
// q inside Q[x1,x2,x3], giving -2 + t*3d and the interval (0, 2/(3d)).
DestabCertificate rank3_certificate(const MultiForm& q, const MultiForm& g, int d);

enum class ChamberStatus { CertifiedUnstable, Unknown };

struct ChamberScanEntry {
  Rat lo, hi;
  ChamberStatus status = ChamberStatus::Unknown;
  int certificate_index = -1;
};

// For each open chamber cut out by the sorted t-walls inside (0, 2/d), report
// a certificate whose destabilizing interval covers the whole chamber.
std::vector<ChamberScanEntry> chamber_scan(const std::vector<DestabCertificate>& certs, int d,
                                           const std::vector<Rat>& t_walls);

}  // namespace kwall
