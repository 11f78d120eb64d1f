#include "kwall/hm.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kwall {

bool OnePS::valid_for(GradingKind kind) const {
  if (kind == GradingKind::Bidegree) return weights[0] + weights[1] == 0 && weights[2] + weights[3] == 0;
  return weights[0] + weights[1] + weights[2] + weights[3] == 0;
}

long long monomial_weight(const Expo& exponents, const OnePS& sigma) {
  long long w = 0;
  for (int i = 0; i < 4; ++i) w += static_cast<long long>(exponents[i]) * sigma.weights[i];
  return w;
}

long long hm_weight(const MultiForm& f, const OnePS& sigma) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "Hilbert-Mumford weight of the zero form");
  const MultiForm* g = &f;
  MultiForm transformed;
  if (sigma.frame) {
    transformed = change_coordinates(f, *sigma.frame);
    g = &transformed;
  }
  bool first = true;
  long long best = 0;
  for (const auto& [e, c] : g->terms) {
    long long w = monomial_weight(e, sigma);
    if (first || w > best) best = w;
    first = false;
  }
  return best;
}

// ---------------------------------------------------------------------------
// weight polytopes

namespace {

LatticePoint centered_weight(const Expo& e, const Grading& g, Torus torus) {
  if (torus == Torus::SL2xSL2) {
    if (g.kind != GradingKind::Bidegree)
      fail(ErrorCode::Grading, "SL2xSL2 torus requires a Bidegree form");
    return {2LL * e[0] - g.deg_a, 2LL * e[2] - g.deg_b};
  }
  if (g.kind != GradingKind::Homogeneous)
    fail(ErrorCode::Grading, "SL4 torus requires a Homogeneous form");
  LatticePoint p(4);
  for (int i = 0; i < 4; ++i) p[i] = 4LL * e[i] - g.deg_a;
  return p;
}

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain; vertices counterclockwise, starting from the
// lexicographically smallest vertex. Collinear points are dropped.
std::vector<LatticePoint> hull2d(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<LatticePoint> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  // counterclockwise; rotate so the lex-smallest vertex leads
  auto mn = std::min_element(h.begin(), h.end());
  std::rotate(h.begin(), mn, h.end());
  return h;
}

std::vector<Rat> to_rat_vec(const LatticePoint& p) {
  std::vector<Rat> v(p.size());
  for (size_t i = 0; i < p.size(); ++i) v[i] = Rat(static_cast<long>(p[i]));
  return v;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Wolfe's minimum-norm-point algorithm, exact over Q.

namespace {

// Solve the affine least-norm system over the points S: minimize |sum mu_i s_i|^2
// subject to sum mu_i = 1. Returns false when the KKT matrix is singular
// (affinely dependent S).
bool affine_minimizer(const std::vector<std::vector<Rat>>& S, std::vector<Rat>& mu) {
  const size_t k = S.size();
  std::vector<std::vector<Rat>> m(k + 1, std::vector<Rat>(k + 2, Rat(0)));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) m[i][j] = dot(S[i], S[j]);
    m[i][k] = Rat(1);
    m[i][k + 1] = Rat(0);
  }
  for (size_t j = 0; j < k; ++j) m[k][j] = Rat(1);
  m[k][k] = Rat(0);
  m[k][k + 1] = Rat(1);
  // Gaussian elimination
  for (size_t col = 0; col <= k; ++col) {
    size_t piv = col;
    while (piv <= k && m[piv][col] == 0) ++piv;
    if (piv > k) return false;
    std::swap(m[piv], m[col]);
    Rat d = m[col][col];
    for (size_t c = col; c <= k + 1; ++c) m[col][c] /= d;
    for (size_t r = 0; r <= k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (size_t c = col; c <= k + 1; ++c) m[r][c] -= f * m[col][c];
    }
  }
  mu.resize(k);
  for (size_t i = 0; i < k; ++i) mu[i] = m[i][k + 1];
  return true;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<std::vector<Rat>>& pts) {
  if (pts.empty()) fail(ErrorCode::Internal, "min_norm_point of empty set");
  const size_t dim = pts[0].size();
  auto norm2 = [&](const std::vector<Rat>& v) { return dot(v, v); };

  // start from the smallest-norm input point
  size_t start = 0;
  Rat best = norm2(pts[0]);
  for (size_t i = 1; i < pts.size(); ++i) {
    Rat n = norm2(pts[i]);
    if (n < best) {
      best = n;
      start = i;
    }
  }
  std::vector<size_t> S{start};
  std::vector<Rat> lam{Rat(1)};
  std::vector<Rat> x = pts[start];

  auto rebuild_x = [&]() {
    x.assign(dim, Rat(0));
    for (size_t i = 0; i < S.size(); ++i)
      for (size_t d = 0; d < dim; ++d) x[d] += lam[i] * pts[S[i]][d];
  };

  for (int guard = 0; guard < 10000; ++guard) {
    Rat xx = norm2(x);
    if (xx == 0) return {x, Rat(0)};
    // most improving vertex
    size_t bestj = 0;
    Rat bestdot = dot(x, pts[0]);
    for (size_t j = 1; j < pts.size(); ++j) {
      Rat dj = dot(x, pts[j]);
      if (dj < bestdot) {
        bestdot = dj;
        bestj = j;
      }
    }
    if (bestdot >= xx) return {x, xx};  // optimality: <x, p> >= <x, x> for all p
    S.push_back(bestj);
    lam.push_back(Rat(0));

    for (int inner = 0; inner < 1000; ++inner) {
      std::vector<std::vector<Rat>> Spts;
      Spts.reserve(S.size());
      for (size_t idx : S) Spts.push_back(pts[idx]);
      std::vector<Rat> mu;
      if (!affine_minimizer(Spts, mu)) {
        // affinely dependent corral: Caratheodory reduction of the current x
        // representation, dropping one point, then retry
        // find dependence by solving [coords;1] alpha = 0
        const size_t k = S.size();
        std::vector<std::vector<Rat>> m(dim + 1, std::vector<Rat>(k, Rat(0)));
        for (size_t j = 0; j < k; ++j) {
          for (size_t d = 0; d < dim; ++d) m[d][j] = Spts[j][d];
          m[dim][j] = Rat(1);
        }
        // row reduce, find a free column
        std::vector<int> where(k, -1);
        size_t row = 0;
        for (size_t col = 0; col < k && row <= dim; ++col) {
          size_t piv = row;
          while (piv <= dim && m[piv][col] == 0) ++piv;
          if (piv > dim) continue;
          std::swap(m[piv], m[row]);
          Rat dpv = m[row][col];
          for (size_t c = 0; c < k; ++c) m[row][c] /= dpv;
          for (size_t r = 0; r <= dim; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (size_t c = 0; c < k; ++c) m[r][c] -= f * m[row][c];
          }
          where[col] = static_cast<int>(row);
          ++row;
        }
        int free_col = -1;
        for (size_t col = 0; col < k; ++col)
          if (where[col] < 0) {
            free_col = static_cast<int>(col);
            break;
          }
        if (free_col < 0) fail(ErrorCode::Internal, "expected affine dependence not found");
        std::vector<Rat> alpha(k, Rat(0));
        alpha[free_col] = Rat(1);
        for (size_t col = 0; col < k; ++col)
          if (where[col] >= 0) alpha[col] = -m[where[col]][free_col];
        // shift lam along alpha until a coordinate hits zero, keeping lam >= 0
        bool has_pos = false;
        for (const Rat& a : alpha) has_pos = has_pos || sgn(a) > 0;
        if (!has_pos)
          for (Rat& a : alpha) a = -a;
        Rat theta;
        int drop = -1;
        for (size_t i = 0; i < k; ++i) {
          if (sgn(alpha[i]) <= 0) continue;
          Rat cand = lam[i] / alpha[i];
          if (drop < 0 || cand < theta) {
            theta = cand;
            drop = static_cast<int>(i);
          }
        }
        for (size_t i = 0; i < k; ++i) lam[i] -= theta * alpha[i];
        S.erase(S.begin() + drop);
        lam.erase(lam.begin() + drop);
        rebuild_x();
        continue;
      }
      bool inside = true;
      for (const Rat& v : mu) inside = inside && sgn(v) >= 0;
      if (inside) {
        lam = mu;
        // drop zero-weight points
        for (size_t i = S.size(); i-- > 0;)
          if (lam[i] == 0) {
            S.erase(S.begin() + i);
            lam.erase(lam.begin() + i);
          }
        rebuild_x();
        break;
      }
      // step toward the affine minimizer until the first coordinate vanishes
      Rat theta(1);
      int drop = -1;
      for (size_t i = 0; i < S.size(); ++i) {
        if (sgn(mu[i]) >= 0) continue;
        Rat cand = lam[i] / (lam[i] - mu[i]);
        if (cand < theta || drop < 0) {
          theta = cand;
          drop = static_cast<int>(i);
        }
      }
      if (drop < 0) fail(ErrorCode::Internal, "no blocking coordinate in line search");
      for (size_t i = 0; i < S.size(); ++i) lam[i] = (Rat(1) - theta) * lam[i] + theta * mu[i];
      lam[drop] = Rat(0);
      S.erase(S.begin() + drop);
      lam.erase(lam.begin() + drop);
      rebuild_x();
    }
  }
  fail(ErrorCode::Internal, "minimum-norm iteration did not converge");
}

// ---------------------------------------------------------------------------

WeightPolytope weight_polytope(const MultiForm& f, Torus torus, const std::optional<Mat4>& frame) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "weight polytope of the zero form");
  const MultiForm* g = &f;
  MultiForm transformed;
  if (frame) {
    transformed = change_coordinates(f, *frame);
    g = &transformed;
  }
  check_homogeneous(*g);
  std::set<LatticePoint> pts;
  for (const auto& [e, c] : g->terms) pts.insert(centered_weight(e, g->grading, torus));
  WeightPolytope wp;
  wp.torus = torus;
  wp.support.assign(pts.begin(), pts.end());
  if (torus == Torus::SL2xSL2) {
    wp.hull = hull2d(wp.support);
  } else {
    // extreme points: p is a vertex iff p is not in the hull of the others
    for (const LatticePoint& p : wp.support) {
      if (wp.support.size() == 1) {
        wp.hull.push_back(p);
        break;
      }
      std::vector<std::vector<Rat>> shifted;
      for (const LatticePoint& q : wp.support) {
        if (q == p) continue;
        std::vector<Rat> v = to_rat_vec(q);
        for (size_t d = 0; d < v.size(); ++d) v[d] -= Rat(static_cast<long>(p[d]));
        shifted.push_back(std::move(v));
      }
      if (min_norm_point(shifted).dist2 > 0) wp.hull.push_back(p);
    }
  }
  return wp;
}

long long polytope_max_weight(const WeightPolytope& wp, const std::vector<long long>& sigma_reduced) {
  if (wp.support.empty()) fail(ErrorCode::ZeroForm, "empty weight polytope");
  bool first = true;
  long long best = 0;
  for (const LatticePoint& p : wp.support) {
    long long w = 0;
    for (size_t i = 0; i < p.size(); ++i) w += p[i] * sigma_reduced[i];
    if (first || w > best) best = w;
    first = false;
  }
  return best;
}

namespace {

// 2D: exact distance from the origin to the hull, with the nearest point.
MinNormResult nearest_point_2d(const std::vector<LatticePoint>& hull) {
  auto seg_nearest = [](const LatticePoint& a, const LatticePoint& b) {
    std::vector<Rat> av = to_rat_vec(a), bv = to_rat_vec(b);
    std::vector<Rat> d{bv[0] - av[0], bv[1] - av[1]};
    Rat dd = dot(d, d);
    std::vector<Rat> p = av;
    if (dd != 0) {
      Rat u = -(av[0] * d[0] + av[1] * d[1]) / dd;
      if (u < 0) u = 0;
      if (u > 1) u = 1;
      p = {av[0] + u * d[0], av[1] + u * d[1]};
    }
    return p;
  };
  MinNormResult best;
  bool first = true;
  const size_t n = hull.size();
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rat> p = n == 1 ? to_rat_vec(hull[0]) : seg_nearest(hull[i], hull[(i + 1) % n]);
    Rat d2 = dot(p, p);
    if (first || d2 < best.dist2) {
      best.point = p;
      best.dist2 = d2;
    }
    first = false;
  }
  return best;
}

bool origin_in_hull_2d(const std::vector<LatticePoint>& hull) {
  const size_t n = hull.size();
  if (n == 1) return hull[0][0] == 0 && hull[0][1] == 0;
  if (n == 2) {
    // origin on the segment?
    if (cross(hull[0], hull[1], {0, 0}) != 0) return false;
    long long lo0 = std::min(hull[0][0], hull[1][0]), hi0 = std::max(hull[0][0], hull[1][0]);
    long long lo1 = std::min(hull[0][1], hull[1][1]), hi1 = std::max(hull[0][1], hull[1][1]);
    return lo0 <= 0 && 0 <= hi0 && lo1 <= 0 && 0 <= hi1;
  }
  for (size_t i = 0; i < n; ++i)
    if (cross(hull[i], hull[(i + 1) % n], {0, 0}) < 0) return false;
  return true;
}

std::array<long long, 4> certificate_weights_from_direction(const std::vector<Rat>& x, Torus torus) {
  // integer primitive vector proportional to -x
  Int denlcm(1);
  for (const Rat& v : x) {
    Int d = v.get_den();
    denlcm = denlcm / gcd(denlcm, d) * d;
  }
  std::vector<Int> w;
  Int g(0);
  for (const Rat& v : x) {
    Int n = -(v.get_num() * (denlcm / v.get_den()));
    w.push_back(n);
    g = gcd(g, n);
  }
  if (g != 0)
    for (Int& v : w) v /= g;
  std::array<long long, 4> res{0, 0, 0, 0};
  if (torus == Torus::SL2xSL2) {
    res = {w[0].get_si(), -w[0].get_si(), w[1].get_si(), -w[1].get_si()};
  } else {
    for (int i = 0; i < 4; ++i) res[i] = w[i].get_si();
  }
  return res;
}

}  // namespace

StabilityResult torus_semistable(const MultiForm& f, Torus torus, const std::optional<Mat4>& frame) {
  WeightPolytope wp = weight_polytope(f, torus, frame);
  bool inside;
  if (torus == Torus::SL2xSL2) {
    inside = origin_in_hull_2d(wp.hull);
  } else {
    std::vector<std::vector<Rat>> pts;
    for (const LatticePoint& p : wp.support) pts.push_back(to_rat_vec(p));
    inside = min_norm_point(pts).dist2 == 0;
  }
  StabilityResult res;
  if (inside) {
    res.semistable = true;
    return res;
  }
  InstabilityMeasure im = instability_measure(f, torus, frame);
  OnePS sigma;
  sigma.weights = certificate_weights_from_direction(im.nearest, torus);
  sigma.frame = frame;
  // machine-check before returning: every centered support weight must pair
  // strictly positively with -sigma
  std::vector<long long> reduced;
  if (torus == Torus::SL2xSL2)
    reduced = {sigma.weights[0], sigma.weights[2]};
  else
    reduced = {sigma.weights[0], sigma.weights[1], sigma.weights[2], sigma.weights[3]};
  if (polytope_max_weight(wp, reduced) >= 0)
    fail(ErrorCode::Internal, "destabilizing certificate failed verification");
  res.semistable = false;
  res.certificate = sigma;
  return res;
}

InstabilityMeasure instability_measure(const MultiForm& f, Torus torus,
                                       const std::optional<Mat4>& frame) {
  WeightPolytope wp = weight_polytope(f, torus, frame);
  MinNormResult mn;
  if (torus == Torus::SL2xSL2) {
    // an interior origin has distance zero; the edge scan only measures the boundary
    if (origin_in_hull_2d(wp.hull)) return InstabilityMeasure{Rat(0), {Rat(0), Rat(0)}};
    mn = nearest_point_2d(wp.hull);
  } else {
    std::vector<std::vector<Rat>> pts;
    for (const LatticePoint& p : wp.support) pts.push_back(to_rat_vec(p));
    mn = min_norm_point(pts);
  }
  return InstabilityMeasure{mn.dist2, mn.point};
}

Mat4 adapted_frame(const std::array<Rat, 2>& xpoint, const std::array<Rat, 2>& ypoint) {
  auto block = [](const std::array<Rat, 2>& p) {
    if (p[0] == 0 && p[1] == 0) fail(ErrorCode::Range, "a projective point needs a nonzero coordinate");
    Mat2 b;
    b[0][0] = p[0];
    b[1][0] = p[1];
    // complete to an invertible matrix
    if (p[0] != 0) {
      b[0][1] = Rat(0);
      b[1][1] = Rat(1);
    } else {
      b[0][1] = Rat(1);
      b[1][1] = Rat(0);
    }
    return b;
  };
  return mat4_from_blocks(block(xpoint), block(ypoint));
}

FrameScanResult scan_frames(const MultiForm& f, Torus torus, const std::vector<Mat4>& frames) {
  FrameScanResult res;
  for (size_t i = 0; i < frames.size(); ++i) {
    StabilityResult sr = torus_semistable(f, torus, frames[i]);
    if (!sr.semistable) {
      res.destabilized = true;
      res.frame_index = static_cast<int>(i);
      res.certificate = sr.certificate;
      return res;
    }
  }
  return res;
}

}  // namespace kwall
