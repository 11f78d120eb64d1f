#include "kwall/vgit.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace kwall {

RestrictedPolarization restricted_polarization(const SlopePolarization& pol) {
  if (pol.d < 3) fail(ErrorCode::Range, "d must be at least 3");
  Rat dmax = rat_q(2, 3 * pol.d);
  if (pol.delta <= 0 || pol.delta >= dmax) fail(ErrorCode::Range, "delta must lie in (0, 2/(3d))");
  if (pol.t <= pol.delta || pol.t > rat_q(2, pol.d)) fail(ErrorCode::Range, "t must lie in (delta, 2/d]");
  Rat denom = Rat(2) - Rat(pol.d) * pol.delta;
  RestrictedPolarization r;
  r.mix_base = (Rat(2) - Rat(pol.d) * pol.t) / denom;
  r.mix_chow = (pol.t - pol.delta) / denom;
  // audit the restriction identity: mix_base*(eta + delta*xi) + mix_chow*(d*eta + 2*xi) = eta + t*xi
  Rat eta = r.mix_base + Rat(pol.d) * r.mix_chow;
  Rat xi = r.mix_base * pol.delta + 2 * r.mix_chow;
  if (eta != 1 || xi != pol.t) fail(ErrorCode::Internal, "polarization mixing identity failed");
  r.eta_coeff = eta;
  r.xi_coeff = xi;
  return r;
}

bool ample_range(int d, const Rat& t) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  return t > 0 && t < rat_q(1, d - 1);
}

bool SlopeInterval::contains(const Rat& x) const {
  if (empty) return false;
  if (x < lo || (x == lo && lo_open)) return false;
  if (x > hi || (x == hi && hi_open)) return false;
  return true;
}

bool SlopeInterval::covers_open(const Rat& a, const Rat& b) const {
  if (empty) return false;
  return lo <= a && b <= hi;
}

std::string SlopeInterval::to_string() const {
  if (empty) return "{}";
  std::ostringstream os;
  os << (lo_open ? "(" : "[") << rat_to_string(lo) << ", " << rat_to_string(hi)
     << (hi_open ? ")" : "]");
  return os.str();
}

DestabCertificate make_certificate(const MultiForm& q, const MultiForm& g, const OnePS& sigma, int d) {
  if (q.grading.kind != GradingKind::Homogeneous || q.grading.deg_a != 2)
    fail(ErrorCode::Grading, "q must have degree 2");
  if (g.grading.kind != GradingKind::Homogeneous || g.grading.deg_a != d)
    fail(ErrorCode::Grading, "g must have degree d");
  if (!sigma.valid_for(GradingKind::Homogeneous))
    fail(ErrorCode::Range, "sigma must be a trace-zero SL(4) weight vector");
  DestabCertificate cert;
  cert.q = q;
  cert.g = g;
  cert.sigma = sigma;
  cert.weight_q = hm_weight(q, sigma);
  cert.weight_g = hm_weight(g, sigma);
  return cert;
}

Rat vgit_mu_bound(const MultiForm& q, const MultiForm& g, const OnePS& sigma, const Rat& t) {
  if (!sigma.valid_for(GradingKind::Homogeneous))
    fail(ErrorCode::Range, "sigma must be a trace-zero SL(4) weight vector");
  return rat_of(hm_weight(q, sigma)) + t * rat_of(hm_weight(g, sigma));
}

SlopeInterval destabilizing_interval(const DestabCertificate& cert, int d) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  Rat top = rat_q(2, d);
  SlopeInterval iv;
  Rat wq = rat_of(cert.weight_q), wg = rat_of(cert.weight_g);
  if (wg == 0) {
    if (wq >= 0) return iv;  // empty
    iv = SlopeInterval{false, Rat(0), top, true, false};
    return iv;
  }
  Rat root = -wq / wg;
  if (wg > 0) {
    // negative for t < root
    if (root <= 0) return iv;
    iv.empty = false;
    iv.lo = Rat(0);
    iv.lo_open = true;
    if (root > top) {
      iv.hi = top;
      iv.hi_open = false;
    } else {
      iv.hi = root;
      iv.hi_open = true;
    }
    return iv;
  }
  // wg < 0: negative for t > root
  if (root >= top) return iv;
  iv.empty = false;
  iv.hi = top;
  iv.hi_open = false;
  if (root < 0) {
    iv.lo = Rat(0);
    iv.lo_open = true;
  } else {
    iv.lo = root;
    iv.lo_open = true;
  }
  return iv;
}

// ---------------------------------------------------------------------------
// quadric normal forms

QuadricDiagonalization diagonalize_quadric(const MultiForm& q) {
  if (q.grading.kind != GradingKind::Homogeneous || q.grading.deg_a != 2)
    fail(ErrorCode::Grading, "expected a Homogeneous(2) form");
  // Gram matrix: S[i][i] = coeff(x_i^2), S[i][j] = coeff(x_i x_j)/2.
  std::array<std::array<Rat, 4>, 4> S;
  for (auto& row : S) row.fill(Rat(0));
  for (const auto& [e, c] : q.terms) {
    int idx[2], k = 0;
    for (int i = 0; i < 4; ++i)
      for (int r = 0; r < e[i]; ++r) idx[k++] = i;
    if (idx[0] == idx[1]) S[idx[0]][idx[0]] += c;
    else {
      S[idx[0]][idx[1]] += c / 2;
      S[idx[1]][idx[0]] += c / 2;
    }
  }
  Mat4 M = mat4_identity();
  // column operation S -> E^T S E tracked as M -> M*E
  auto col_op = [&](int target, int source, const Rat& factor) {
    for (int r = 0; r < 4; ++r) S[r][target] += factor * S[r][source];
    for (int cidx = 0; cidx < 4; ++cidx) S[target][cidx] += factor * S[source][cidx];
    for (int r = 0; r < 4; ++r) M[r][target] += factor * M[r][source];
  };
  auto col_swap = [&](int a, int b) {
    for (int r = 0; r < 4; ++r) std::swap(S[r][a], S[r][b]);
    for (int cidx = 0; cidx < 4; ++cidx) std::swap(S[a][cidx], S[b][cidx]);
    for (int r = 0; r < 4; ++r) std::swap(M[r][a], M[r][b]);
  };
  for (int i = 0; i < 4; ++i) {
    if (S[i][i] == 0) {
      int j = -1;
      for (int k = i + 1; k < 4; ++k)
        if (S[k][k] != 0) {
          j = k;
          break;
        }
      if (j >= 0) {
        col_swap(i, j);
      } else {
        for (int k = i + 1; k < 4 && j < 0; ++k)
          if (S[i][k] != 0) j = k;
        if (j < 0) continue;  // zero row: diagonal entry stays 0
        col_op(i, j, Rat(1));  // makes S[i][i] = 2*S[i][j] != 0
      }
    }
    for (int k = i + 1; k < 4; ++k) {
      if (S[i][k] == 0) continue;
      col_op(k, i, -S[i][k] / S[i][i]);
    }
  }
  QuadricDiagonalization out;
  out.frame = M;
  out.rank = 0;
  for (int i = 0; i < 4; ++i) {
    out.diag[i] = S[i][i];
    if (S[i][i] != 0) ++out.rank;
  }
  return out;
}

int quadric_rank(const MultiForm& q) { return diagonalize_quadric(q).rank; }

MultiForm quadric_normal_form(QuadricNormalForm kind) {
  Grading g = Grading::homogeneous(2);
  switch (kind) {
    case QuadricNormalForm::RankOne: return parse_form("x0^2", g);
    case QuadricNormalForm::RankTwo: return parse_form("x0 x1", g);
    case QuadricNormalForm::RankThree: return parse_form("x1 x2 - x3^2", g);
    case QuadricNormalForm::RankFour: return parse_form("x0 x1 - x2 x3", g);
  }
  fail(ErrorCode::Internal, "unknown normal form");
}

MultiForm generic_section(int d, std::uint64_t seed) {
  if (d < 1) fail(ErrorCode::Range, "degree must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 97);
  std::uniform_int_distribution<int> den(1, 13);
  Grading g = Grading::homogeneous(d);
  MultiForm f = zero_form(g);
  std::vector<Rat> used;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b)
      for (int c = 0; a + b + c <= d; ++c) {
        int e3 = d - a - b - c;
        Rat coeff;
        do {
          coeff = rat_q(num(rng), den(rng)) * (rng() % 2 ? 1 : -1);
        } while (std::find(used.begin(), used.end(), coeff) != used.end());
        used.push_back(coeff);
        f = form_add(f, monomial_form(g, Expo{a, b, c, e3}, coeff));
      }
  return f;
}

namespace {

Mat4 permute_columns(const Mat4& m, const std::array<int, 4>& perm) {
  // result column j = m column perm[j]
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = m[i][perm[j]];
  return r;
}

bool has_monomial_supported_on(const MultiForm& f, std::initializer_list<int> vars) {
  for (const auto& [e, c] : f.terms) {
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      bool allowed = false;
      for (int v : vars) allowed = allowed || v == i;
      if (!allowed) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

DestabCertificate low_rank_certificate(const MultiForm& q, const MultiForm& g, int d) {
  QuadricDiagonalization diag = diagonalize_quadric(q);
  if (diag.rank > 2) fail(ErrorCode::Range, "quadric has rank > 2");
  if (diag.rank == 0) fail(ErrorCode::ZeroForm, "zero quadric");
  // permutation pushing the nonzero diagonal entries to the front
  std::array<int, 4> perm{};
  int front = 0, back = 0;
  std::array<int, 4> nonzero_slots{}, zero_slots{};
  for (int i = 0; i < 4; ++i) {
    if (diag.diag[i] != 0) nonzero_slots[front++] = i;
    else zero_slots[back++] = i;
  }
  for (int i = 0; i < front; ++i) perm[i] = nonzero_slots[i];
  for (int i = 0; i < back; ++i) perm[front + i] = zero_slots[i];
  Mat4 frame = permute_columns(diag.frame, perm);

  OnePS sigma;
  sigma.weights = {-1, -1, 1, 1};
  sigma.frame = frame;
  DestabCertificate cert = make_certificate(q, g, sigma, d);
  if (cert.weight_q != -2)
    fail(ErrorCode::Internal, "rank<=2 quadric did not reach weight -2 in its diagonal frame");
  // genericity: g must keep a monomial on the last two coordinates so that
  // mu(g, sigma) attains d
  MultiForm g_frame = change_coordinates(g, frame);
  if (!has_monomial_supported_on(g_frame, {2, 3}))
    fail(ErrorCode::Range, "section is not generic for the rank<=2 certificate");
  if (cert.weight_g != d) fail(ErrorCode::Internal, "generic section weight is not d");
  cert.note = "rank<=2 bound -2 + t*d";
  return cert;
}

DestabCertificate rank3_certificate(const MultiForm& q, const MultiForm& g, int d) {
  QuadricDiagonalization diag = diagonalize_quadric(q);
  if (diag.rank != 3) fail(ErrorCode::Range, "quadric must have rank exactly 3");
  // place the kernel coordinate first: q lives in Q[x1,x2,x3]
  std::array<int, 4> perm{};
  int zero_at = -1;
  for (int i = 0; i < 4; ++i)
    if (diag.diag[i] == 0) zero_at = i;
  perm[0] = zero_at;
  int k = 1;
  for (int i = 0; i < 4; ++i)
    if (i != zero_at) perm[k++] = i;
  Mat4 frame = permute_columns(diag.frame, perm);

  OnePS sigma;
  sigma.weights = {3, -1, -1, -1};
  sigma.frame = frame;
  DestabCertificate cert = make_certificate(q, g, sigma, d);
  if (cert.weight_q != -2)
    fail(ErrorCode::Internal, "rank-3 quadric did not reach weight -2 in its diagonal frame");
  MultiForm g_frame = change_coordinates(g, frame);
  if (!has_monomial_supported_on(g_frame, {0}))
    fail(ErrorCode::Range, "section is not generic for the rank-3 certificate (needs the x0^d monomial)");
  if (cert.weight_g != 3LL * d) fail(ErrorCode::Internal, "generic section weight is not 3d");
  cert.note = "rank-3 bound -2 + t*3d";
  return cert;
}

std::vector<ChamberScanEntry> chamber_scan(const std::vector<DestabCertificate>& certs, int d,
                                           const std::vector<Rat>& t_walls) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  Rat top = rat_q(2, d);
  std::vector<Rat> cuts;
  Rat prev(0);
  for (const Rat& w : t_walls) {
    if (w <= prev || w > top) fail(ErrorCode::Range, "walls must be strictly increasing inside (0, 2/d]");
    cuts.push_back(w);
    prev = w;
  }
  if (cuts.empty() || cuts.back() != top) cuts.push_back(top);

  std::vector<SlopeInterval> intervals;
  intervals.reserve(certs.size());
  for (const DestabCertificate& cert : certs) intervals.push_back(destabilizing_interval(cert, d));

  std::vector<ChamberScanEntry> out;
  Rat lo(0);
  for (const Rat& hi : cuts) {
    ChamberScanEntry entry;
    entry.lo = lo;
    entry.hi = hi;
    for (size_t i = 0; i < intervals.size(); ++i) {
      if (intervals[i].covers_open(lo, hi)) {
        entry.status = ChamberStatus::CertifiedUnstable;
        entry.certificate_index = static_cast<int>(i);
        break;
      }
    }
    out.push_back(entry);
    lo = hi;
  }
  return out;
}

}  // namespace kwall
