#include "kwall/localvol.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace kwall {

void QuotientSing::validate() const {
  if (e < 1 || n < 1 || a < 1) fail(ErrorCode::Range, "e, n, a must be positive");
  if (std::gcd(a, n) != 1) fail(ErrorCode::Range, "gcd(a, n) must be 1");
}

std::string QuotientSing::type_string() const {
  std::ostringstream os;
  os << "1/" << order() << "(1," << cover_weight() << ")";
  return os.str();
}

Rat nvol_monomial_bound(const MonomialValuation& v, const Rat& c) {
  if (v.w1 < 1 || v.w2 < 1 || v.wD < 0) fail(ErrorCode::Range, "invalid monomial valuation");
  if (c < 0) fail(ErrorCode::Range, "c must be non-negative");
  Rat adj = Rat(v.w1 + v.w2) - c * Rat(v.wD);
  if (adj <= 0) fail(ErrorCode::Range, "adjusted log discrepancy must stay positive");
  return adj * adj / Rat(v.w1 * v.w2);
}

Rat nvol_quotient(long order) {
  if (order < 1) fail(ErrorCode::Range, "group order must be positive");
  return rat_q(4, order);
}

bool global_bound_holds(int d, const Rat& c, const Rat& nvol) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (c < 0 || c >= rat_q(2, d)) fail(ErrorCode::Range, "c must lie in [0, 2/d)");
  Rat beta = Rat(1) - Rat(d) * c / 2;
  return Rat(8) * beta * beta <= rat_q(9, 4) * nvol;
}

long index_bound(int d, const Rat& c, IndexBoundCase which) {
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (c <= 0 || c >= rat_q(2, d)) fail(ErrorCode::Range, "c must lie in (0, 2/d)");
  Rat gap = Rat(2) - Rat(d) * c;  // = 2*beta > 0
  auto sqrt_floor_cap = [&](long mul) {
    // largest k >= 0 with mul * k^2 * gap^2 <= 9
    Rat bound = Rat(9) / (Rat(mul) * gap * gap);
    Int k = rat_sqrt_floor(bound);
    return k.get_si();
  };
  switch (which) {
    case IndexBoundCase::MuZero:
      return std::min<long>(sqrt_floor_cap(2), d + 1);
    case IndexBoundCase::MuOne: {
      // floor(3 / (2*gap)) exactly
      Rat v = Rat(3) / (Rat(2) * gap);
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
      return std::min<long>(fl.get_si(), d);
    }
    case IndexBoundCase::OddDEvenIndex: {
      if (d % 2 == 0) fail(ErrorCode::Parity, "this case requires odd d");
      return std::min<long>(2 * sqrt_floor_cap(8), 2 * d - 2);
    }
  }
  fail(ErrorCode::Internal, "unknown index bound case");
}

namespace {

// Residue test for one exponent pair.
bool congruence_holds(const QuotientSing& s, int d, long i, long j) {
  long m = s.order();
  long w2 = s.cover_weight();
  long ena = s.e * s.n * s.a;
  long lhs, rhs;
  if (d % 2 == 0) {
    lhs = (i + w2 * j) % m;
    rhs = ((d / 2) % m) * (ena % m) % m;
  } else {
    lhs = (2 * (i + w2 * j)) % m;
    rhs = (static_cast<long>(d) % m) * (ena % m) % m;
  }
  return ((lhs - rhs) % m + m) % m == 0;
}

}  // namespace

std::vector<std::pair<int, int>> congruence_monomials(const QuotientSing& sing, int d, int max_total) {
  sing.validate();
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (max_total < 0) fail(ErrorCode::Range, "max_total must be non-negative");
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s <= max_total; ++s)
    for (int i = 0; i <= s; ++i)
      if (congruence_holds(sing, d, i, s - i)) out.emplace_back(i, s - i);
  return out;
}

// ---------------------------------------------------------------------------
// exclusion machinery

namespace {

// One-dimensional window with endpoints of the form u + v*sqrt(m).
struct AlgWindow {
  SqrtVal lo, hi;
  bool lo_open = true, hi_open = true;
  bool empty = false;

  void clip_lo(const SqrtVal& v, bool open) {
    if (empty) return;
    int c = sqrtval_cmp(v, lo);
    if (c > 0) {
      lo = v;
      lo_open = open;
    } else if (c == 0) {
      lo_open = lo_open || open;
    }
    settle();
  }
  void clip_hi(const SqrtVal& v, bool open) {
    if (empty) return;
    int c = sqrtval_cmp(v, hi);
    if (c < 0) {
      hi = v;
      hi_open = open;
    } else if (c == 0) {
      hi_open = hi_open || open;
    }
    settle();
  }
  void settle() {
    if (empty) return;
    int c = sqrtval_cmp(lo, hi);
    if (c > 0 || (c == 0 && (lo_open || hi_open))) empty = true;
  }
};

// Square radicands collapse to rationals; keeps the rationalization below
// away from vanishing conjugate norms.
SqrtVal fold_square(const SqrtVal& v) {
  if (v.b == 0 || v.m == 0 || !v.is_rational()) return v;
  return SqrtVal::from_rat(v.to_rat());
}

// Constraint p + q*c >= 0 with SqrtVal coefficients sharing one radicand.
void apply_halfline(AlgWindow& w, const SqrtVal& p_in, const SqrtVal& q_in) {
  if (w.empty) return;
  SqrtVal p = fold_square(p_in);
  SqrtVal q = fold_square(q_in);
  int sq = q.sign();
  if (sq == 0) {
    if (p.sign() < 0) w.empty = true;
    return;
  }
  // c0 = -p/q, rationalized over the shared radicand
  Int m = q.m;
  Rat den = q.a * q.a - q.b * q.b * Rat(m);
  SqrtVal c0;
  if (den == 0) {
    // q = b*sqrt(m) (a = 0) or degenerate; handle pure radical separately
    if (q.a == 0 && q.b != 0) {
      // -p / (b sqrt(m)) = -(p * sqrt(m)) / (b m)
      Rat bm = q.b * Rat(m);
      c0 = SqrtVal(-p.b * Rat(m) / bm, -p.a / bm, m);
    } else {
      fail(ErrorCode::Internal, "degenerate rationalization");
    }
  } else {
    // (-p) * conj(q) / (q * conj(q)), conj over sqrt(m)
    SqrtVal num(-(p.a * q.a) + p.b * q.b * Rat(m), -(p.b * q.a) + p.a * q.b, m);
    c0 = SqrtVal(num.a / den, num.b / den, m);
  }
  if (sq > 0) w.clip_lo(c0, false);
  else w.clip_hi(c0, false);
}

struct ValuationConstraint {
  long A;        // w1 + w2
  long wD;       // boundary value lower bound
  Int radicand;  // 2 e w1 w2
  long n;        // index
};

// sqrt(32 e n^2 w1 w2) * (1 - cd/2) <= 3 (A - c wD), all over the window.
void apply_valuation(AlgWindow& w, const ValuationConstraint& vc, int d) {
  if (w.empty) return;
  // positivity of the adjusted discrepancy: A - c*wD > 0
  if (vc.wD > 0) w.clip_hi(SqrtVal::from_rat(rat_q(vc.A, vc.wD)), true);
  // linear constraint (3A - lambda) + c(lambda d/2 - 3 wD) >= 0, lambda = 4n sqrt(radicand)
  SqrtVal p(Rat(3 * vc.A), Rat(-4 * vc.n), vc.radicand);
  SqrtVal q(Rat(-3 * vc.wD), Rat(4 * vc.n) * Rat(d) / 2, vc.radicand);
  apply_halfline(w, p, q);
}

// least admissible weighted value v = i + w2*j with order >= s; exists below
// s + order by the residue argument (i = v, j = 0 realizes any admissible v >= s)
long refined_wD_for_order(const QuotientSing& sing, int d, long s) {
  long m = sing.order();
  for (long v = s; v <= s + m; ++v)
    if (congruence_holds(sing, d, v, 0)) return v;
  fail(ErrorCode::Internal, "no admissible weighted value found");
}

}  // namespace

ExclusionResult exclude_singularity(const QuotientSing& sing, int d, const Rat& c_lo, const Rat& c_hi) {
  sing.validate();
  if (d < 3) fail(ErrorCode::Range, "d must be at least 3");
  if (!(0 <= c_lo && c_lo < c_hi && c_hi <= rat_q(2, d)))
    fail(ErrorCode::Range, "the weight window must be an open sub-interval of (0, 2/d)");

  auto base_window = [&]() {
    AlgWindow w;
    w.lo = SqrtVal::from_rat(c_lo);
    w.hi = SqrtVal::from_rat(c_hi);
    return w;
  };
  auto order_constraint = [&](long s) {
    return ValuationConstraint{2, s, Int(2) * sing.e, sing.n};
  };

  ExclusionResult res;

  // order 1 is a smooth point: the volume inequality 32*(1-cd/2)^2 <= 36 holds
  // on the whole window and nothing can ever be refuted
  if (sing.order() == 1) {
    ExclusionCandidate cand;
    cand.i = 0;
    cand.j = 0;
    cand.status = "survived";
    cand.witness_c = (c_lo + c_hi) / 2;
    res.candidates.push_back(cand);
    res.witness = cand;
    res.excluded = false;
    return res;
  }

  // Orders are enumerated until the order valuation alone empties the window;
  // monotone in s, so larger orders stay refuted.
  long stop = -1;
  const long hard_cap = 8L * d + 100;
  for (long s = 0; s <= hard_cap; ++s) {
    AlgWindow w = base_window();
    if (s > 0) w.clip_hi(SqrtVal::from_rat(rat_q(2, s)), true);  // Skoda: c < 2/(i+j)
    apply_valuation(w, order_constraint(s), d);
    if (w.empty) {
      stop = s;
      break;
    }
  }
  if (stop < 0) fail(ErrorCode::Internal, "order enumeration did not terminate");
  res.degree_bound = static_cast<int>(stop) - 1;  // -1: even order 0 is refuted

  std::vector<std::pair<int, int>> admissible;
  if (stop > 0) admissible = congruence_monomials(sing, d, static_cast<int>(stop) - 1);
  res.no_admissible = admissible.empty();

  long w2 = sing.cover_weight();
  for (auto [i, j] : admissible) {
    ExclusionCandidate cand;
    cand.i = i;
    cand.j = j;
    long s = i + j;
    AlgWindow w = base_window();
    if (s > 0) w.clip_hi(SqrtVal::from_rat(rat_q(2, s)), true);
    if (w.empty) {
      cand.status = "killed-window";
      cand.detail = "Skoda bound c < 2/(i+j) empties the window";
      res.candidates.push_back(std::move(cand));
      continue;
    }
    apply_valuation(w, order_constraint(s), d);
    if (w.empty) {
      cand.status = "killed-order-valuation";
      std::ostringstream os;
      os << "4*sqrt(" << 2 * sing.e << ")*" << sing.n << "*(1-" << d << "c/2) <= 3(2-" << s
         << "c) fails on the whole window";
      cand.detail = os.str();
      res.candidates.push_back(std::move(cand));
      continue;
    }
    if (w2 >= 1) {
      long wDr = refined_wD_for_order(sing, d, s);
      cand.refined_wD = wDr;
      ValuationConstraint refined{1 + w2, wDr, Int(2) * sing.e * w2, sing.n};
      apply_valuation(w, refined, d);
      if (w.empty) {
        cand.status = "killed-refined-valuation";
        std::ostringstream os;
        os << "4*sqrt(" << Int(2) * sing.e * w2 << ")*" << sing.n << "*(1-" << d << "c/2) <= 3("
           << 1 + w2 << "-" << wDr << "c) fails on the surviving window";
        cand.detail = os.str();
        res.candidates.push_back(std::move(cand));
        continue;
      }
    }
    // candidate survives: produce a rational weight witness when the window
    // has width, otherwise only a rational endpoint counts (weights are
    // rational throughout)
    int boundary = sqrtval_cmp(w.lo, w.hi);
    if (boundary == 0) {
      if (w.lo.is_rational()) {
        cand.witness_c = w.lo.to_rat();
      } else {
        cand.status = "killed-window";
        cand.detail = "surviving set is a single irrational point; no rational weight";
        res.candidates.push_back(std::move(cand));
        continue;
      }
    } else {
      cand.witness_c = rational_between(w.lo, w.hi);
    }
    cand.status = "survived";
    res.candidates.push_back(cand);
    if (!res.witness) res.witness = cand;
  }

  res.excluded = !res.witness.has_value();
  return res;
}

// ---------------------------------------------------------------------------
// Markov-type equation a^2 + b^2 + 2c^2 = 4abc

bool MarkovTriple::satisfies_equation() const {
  Int A(a), B(b), C(c);
  return A * A + B * B + 2 * C * C == 4 * A * B * C;
}

namespace {

MarkovTriple canon(long a, long b, long c) {
  if (a > b) std::swap(a, b);
  return MarkovTriple{a, b, c};
}

}  // namespace

std::array<MarkovTriple, 3> markov_neighbors(const MarkovTriple& t) {
  return {canon(4 * t.b * t.c - t.a, t.b, t.c), canon(t.a, 4 * t.a * t.c - t.b, t.c),
          canon(t.a, t.b, 2 * t.a * t.b - t.c)};
}

std::vector<MarkovTriple> markov_enumerate(long bound) {
  if (bound < 1) fail(ErrorCode::Range, "bound must be positive");
  std::set<MarkovTriple> seen;
  std::deque<MarkovTriple> queue;
  MarkovTriple root{1, 1, 1};
  if (bound >= 1) {
    seen.insert(root);
    queue.push_back(root);
  }
  while (!queue.empty()) {
    MarkovTriple t = queue.front();
    queue.pop_front();
    for (const MarkovTriple& nb : markov_neighbors(t)) {
      if (nb.a < 1 || nb.b < 1 || nb.c < 1) fail(ErrorCode::Internal, "Vieta jump left the positive cone");
      if (std::max({nb.a, nb.b, nb.c}) > bound) continue;
      if (seen.insert(nb).second) queue.push_back(nb);
    }
  }
  return std::vector<MarkovTriple>(seen.begin(), seen.end());
}

std::vector<MarkovTriple> markov_brute_force(long bound) {
  std::set<MarkovTriple> out;
  for (long a = 1; a <= bound; ++a)
    for (long b = a; b <= bound; ++b)
      for (long c = 1; c <= bound; ++c)
        if (MarkovTriple{a, b, c}.satisfies_equation()) out.insert(MarkovTriple{a, b, c});
  return std::vector<MarkovTriple>(out.begin(), out.end());
}

std::array<long, 3> weighted_projective_from_markov(const MarkovTriple& t) {
  if (!t.satisfies_equation()) fail(ErrorCode::Range, "not a solution of a^2+b^2+2c^2=4abc");
  std::array<long, 3> w{t.a * t.a, t.b * t.b, 2 * t.c * t.c};
  std::sort(w.begin(), w.end());
  return w;
}

std::optional<QuotientSing> recognize_T_singularity(long r, long b) {
  if (r < 1 || b < 0) return std::nullopt;
  for (long n = 1; n * n <= r; ++n) {
    if (r % (n * n) != 0) continue;
    long e = r / (n * n);
    if ((b + 1) % (e * n) != 0) continue;
    long a = (b + 1) / (e * n);
    if (a < 1 || std::gcd(a, n) != 1) continue;
    QuotientSing s{e, n, a};
    if (s.order() == r && s.cover_weight() == b) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// log canonical thresholds from Newton diagrams

LctResult lct_from_monomials(const PlaneCurveGerm& germ) {
  if (germ.monomials.empty()) fail(ErrorCode::Range, "empty germ");
  for (auto [i, j] : germ.monomials)
    if (i < 0 || j < 0) fail(ErrorCode::Range, "negative exponent");

  LctResult res;
  res.multiplicity = germ.monomials[0].first + germ.monomials[0].second;
  for (auto [i, j] : germ.monomials)
    res.multiplicity = std::min(res.multiplicity, i + j);
  if (res.multiplicity == 0) fail(ErrorCode::Range, "germ is a unit");
  res.skoda_bound = rat_q(2, res.multiplicity);

  // minimize max(x,y) over the convex hull of the exponents: attained at a
  // vertex or where the diagonal crosses an edge
  auto cross_t = [](std::pair<int, int> p, std::pair<int, int> q) -> std::optional<Rat> {
    long di = q.first - p.first, dj = q.second - p.second;
    if (di == dj) return std::nullopt;  // parallel to the diagonal
    Rat u = Rat(p.second - p.first) / Rat(di - dj);
    if (u < 0 || u > 1) return std::nullopt;
    return Rat(p.first) + u * Rat(di);
  };
  std::optional<Rat> t0;
  auto consider = [&](const Rat& t) {
    if (!t0 || t < *t0) t0 = t;
  };
  for (auto [i, j] : germ.monomials) consider(Rat(std::max(i, j)));
  for (size_t x = 0; x < germ.monomials.size(); ++x)
    for (size_t y = x + 1; y < germ.monomials.size(); ++y)
      if (auto t = cross_t(germ.monomials[x], germ.monomials[y])) consider(*t);
  res.lct = Rat(1) / *t0;
  if (res.lct > 1) res.lct = Rat(1);

  // Monomials spanning the face of the Newton diagram met by the diagonal:
  // if the crossing happens inside a segment [x,y], the face is everything on
  // that segment's supporting line; if the diagonal enters through a vertex's
  // coordinate ray, the face is that single monomial. Over-collecting is
  // harmless here (it only makes the nondegeneracy flag more conservative).
  std::vector<size_t> face;
  bool edge_crossing = false;
  for (size_t x = 0; x < germ.monomials.size() && !edge_crossing; ++x)
    for (size_t y = x + 1; y < germ.monomials.size() && !edge_crossing; ++y) {
      auto t = cross_t(germ.monomials[x], germ.monomials[y]);
      if (!t || *t != *t0) continue;
      edge_crossing = true;
      auto [i1, j1] = germ.monomials[x];
      auto [i2, j2] = germ.monomials[y];
      long aN = static_cast<long>(j2) - j1, bN = static_cast<long>(i1) - i2;
      long cN = aN * i1 + bN * j1;
      for (size_t z = 0; z < germ.monomials.size(); ++z) {
        auto [i, j] = germ.monomials[z];
        if (aN * i + bN * j == cN) face.push_back(z);
      }
    }
  if (!edge_crossing) {
    for (size_t z = 0; z < germ.monomials.size(); ++z) {
      auto [i, j] = germ.monomials[z];
      if (Rat(std::max(i, j)) == *t0 && Rat(i) <= *t0 && Rat(j) <= *t0) face.push_back(z);
    }
  }

  bool param_on_face = false;
  for (size_t x : face)
    if (x < germ.has_parameter.size() && germ.has_parameter[x]) param_on_face = true;
  bool independent_pair = true;
  if (face.size() == 2) {
    auto [i1, j1] = germ.monomials[face[0]];
    auto [i2, j2] = germ.monomials[face[1]];
    independent_pair = (static_cast<long>(i1) * j2 - static_cast<long>(i2) * j1) != 0;
  }
  res.nondegenerate_certain = !param_on_face && face.size() <= 2 && (face.size() < 2 || independent_pair);

  // quasihomogeneous: all monomials on one line alpha*i + beta*j = 1, alpha,beta > 0
  res.quasihomogeneous = true;
  if (germ.monomials.size() >= 2) {
    auto [i1, j1] = germ.monomials[0];
    auto [i2, j2] = germ.monomials[1];
    // solve alpha*i + beta*j = 1 through the first two (or declare collinear failure)
    long det = static_cast<long>(i1) * j2 - static_cast<long>(i2) * j1;
    if (det == 0) {
      // both on a line through the origin: quasihomogeneous iff proportional
      // exponents; weights then exist unless degenerate
      res.quasihomogeneous = false;
    } else {
      Rat alpha = rat_q(j2 - j1, det);
      Rat beta = rat_q(i1 - i2, det);
      if (alpha <= 0 || beta <= 0) res.quasihomogeneous = false;
      for (auto [i, j] : germ.monomials)
        if (alpha * Rat(i) + beta * Rat(j) != 1) res.quasihomogeneous = false;
    }
  }
  if (!res.nondegenerate_certain)
    res.caveat = "Newton value assumes nondegeneracy of the crossing face";
  else if (!res.quasihomogeneous)
    res.caveat = "not quasihomogeneous; value from the Newton diagram";
  return res;
}

namespace {

PlaneCurveGerm make_germ(const std::string& label, std::vector<std::pair<int, int>> mons,
                         std::vector<bool> params) {
  return PlaneCurveGerm{label, std::move(mons), std::move(params)};
}

}  // namespace

PlaneCurveGerm catalog_germ(const std::string& label) {
  if (label.size() >= 3 && label.compare(0, 2, "A_") == 0) {
    int k = std::stoi(label.substr(2));
    if (k < 1) fail(ErrorCode::Range, "A_k needs k >= 1");
    return make_germ(label, {{2, 0}, {0, k + 1}}, {false, false});
  }
  if (label == "E_12") return make_germ(label, {{3, 0}, {0, 7}, {1, 5}}, {false, false, true});
  if (label == "E_13") return make_germ(label, {{3, 0}, {1, 5}, {0, 8}}, {false, false, true});
  if (label == "E_14") return make_germ(label, {{3, 0}, {0, 8}, {1, 6}}, {false, false, true});
  if (label == "J_{4,inf}") return make_germ(label, {{3, 0}, {2, 4}}, {false, false});
  if (label == "J_{3,0}")
    return make_germ(label, {{3, 0}, {2, 3}, {0, 9}, {1, 7}}, {false, true, false, true});
  if (label == "quadruple conic") return make_germ(label, {{4, 0}}, {false});
  if (label == "triple conic + transverse conic") return make_germ(label, {{3, 1}}, {false});
  fail(ErrorCode::Range, "unknown catalog label '" + label + "'");
}

LctResult lct_catalog(const std::string& label) { return lct_from_monomials(catalog_germ(label)); }

}  // namespace kwall
