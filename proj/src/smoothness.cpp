#include "kwall/smoothness.hpp"

#include <optional>

namespace kwall {

BPoly chart_poly(const MultiForm& f, int chart) {
  if (f.grading.kind != GradingKind::Bidegree)
    fail(ErrorCode::Grading, "smoothness probe requires a Bidegree form");
  bool x0_is_one = chart < 2;
  bool y0_is_one = (chart % 2) == 0;
  BPoly r;
  for (const auto& [e, c] : f.terms) {
    int se = x0_is_one ? e[1] : e[0];
    int te = y0_is_one ? e[3] : e[2];
    if (r.deg_t() < te) r.coeff_t.resize(te + 1);
    UPoly& dst = r.coeff_t[te];
    if (up_deg(dst) < se) dst.resize(se + 1, Rat(0));
    dst[se] += c;
  }
  for (UPoly& c : r.coeff_t) up_trim(c);
  bp_trim(r);
  return r;
}

namespace {

// Do the content lines c(u)=0 meet the residual curve inside this chart?
// rest is F divided by that content; a root u0 of c produces a singular point
// as soon as rest(u0, .) is nonconstant in the fiber variable.
std::optional<UPoly> line_intersection_eliminant(const UPoly& content, const BPoly& rest) {
  if (up_deg(content) <= 0) return std::nullopt;
  UPoly g;  // gcd of the positive-fiber-degree coefficients of rest
  for (size_t k = 1; k < rest.coeff_t.size(); ++k) {
    if (rest.coeff_t[k].empty()) continue;
    g = up_gcd(g, rest.coeff_t[k]);
    if (up_deg(g) == 0) break;
  }
  UPoly csf = up_squarefree_part(content);
  Rat lead = csf.back();
  for (Rat& v : csf) v /= lead;
  UPoly shared = g.empty() ? csf : up_gcd(csf, g);
  if (up_deg(shared) == up_deg(csf)) return std::nullopt;  // every line misses the rest here
  UPoly q, r;
  up_divmod(csf, shared.empty() ? up_const(Rat(1)) : shared, q, r);
  return q;  // roots = lines that do meet the residual curve
}

struct ChartOutcome {
  enum Kind { NoWitness, NonReduced, LineIntersection, SingularPoint } kind = NoWitness;
  UPoly eliminant;
  bool eliminant_in_t = false;
};

bool squarefree_1d(const UPoly& p) {
  if (up_deg(p) <= 0) return true;
  return up_deg(up_gcd(p, up_derivative(p))) == 0;
}

ChartOutcome analyze_chart(const BPoly& F) {
  ChartOutcome out;
  if (F.is_zero()) fail(ErrorCode::Internal, "zero chart polynomial");
  if (F.deg_t() <= 0 && F.deg_s() <= 0) return out;  // constant, nothing to see

  // split off fiber-line components in both directions
  UPoly cs = bp_content_t(F);
  BPoly Fa = bp_divide_content(F, cs);
  BPoly FaT = bp_transpose(Fa);
  UPoly ct = bp_content_t(FaT);
  BPoly F2 = bp_transpose(bp_divide_content(FaT, ct));

  // repeated factors sit either inside a content (a doubled fiber line) or
  // inside the bi-primitive part, where squarefree <=> Res_t(F2, dF2/dt) != 0
  UPoly r1;
  bool have_r1 = false;
  if (F2.deg_t() >= 1) {
    r1 = bp_resultant_t(F2, bp_deriv_t(F2));
    have_r1 = true;
  }
  if (!squarefree_1d(cs) || !squarefree_1d(ct) || (have_r1 && r1.empty())) {
    out.kind = ChartOutcome::NonReduced;
    if (!squarefree_1d(cs)) out.eliminant = up_gcd(cs, up_derivative(cs));
    else if (!squarefree_1d(ct)) {
      out.eliminant = up_gcd(ct, up_derivative(ct));
      out.eliminant_in_t = true;
    } else {
      // certificate: the repeated factor itself (rarely reached, so the
      // remainder-sequence gcd cost does not matter here)
      out.eliminant = bp_content_t(bp_transpose(bp_gcd(F2, bp_deriv_t(F2))));
      if (out.eliminant.empty()) out.eliminant = up_const(Rat(1));
    }
    return out;
  }

  if (auto e = line_intersection_eliminant(cs, Fa)) {
    out.kind = ChartOutcome::LineIntersection;
    out.eliminant = *e;
    return out;
  }
  if (auto e = line_intersection_eliminant(ct, bp_transpose(F2))) {
    out.kind = ChartOutcome::LineIntersection;
    out.eliminant = *e;
    out.eliminant_in_t = true;
    return out;
  }

  if (F2.deg_t() <= 0) return out;  // only content remained

  // isolated singular points of the bi-primitive part: the s-coordinate of a
  // common zero of (F2, F2_s, F2_t) kills both elimination resultants, so the
  // expensive branch arithmetic only runs on their common factor
  BPoly F2s = bp_deriv_s(F2);
  BPoly F2t = bp_deriv_t(F2);
  UPoly r2 = bp_resultant_t(F2, F2s);
  UPoly m = r2.empty() ? up_squarefree_part(r1) : up_squarefree_part(up_gcd(r1, r2));
  if (up_deg(m) <= 0) return out;
  for (const BranchGcd& br : branch_gcd_deg({F2, F2s, F2t}, m)) {
    if (br.gcd_deg_t >= 1) {
      out.kind = ChartOutcome::SingularPoint;
      out.eliminant = br.modulus;
      return out;
    }
  }
  return out;
}

}  // namespace

SmoothnessResult is_smooth_curve(const MultiForm& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "smoothness probe needs a nonzero form");
  check_homogeneous(f);

  ChartOutcome outcomes[4];
  for (int chart = 0; chart < 4; ++chart) outcomes[chart] = analyze_chart(chart_poly(f, chart));

  SmoothnessResult res;
  // non-reduced takes priority as the reported reason
  for (int chart = 0; chart < 4; ++chart) {
    if (outcomes[chart].kind == ChartOutcome::NonReduced) {
      res.smooth = false;
      res.reason = "non-reduced";
      res.chart = chart;
      res.eliminant = up_to_string(outcomes[chart].eliminant, "s");
      return res;
    }
  }
  for (int chart = 0; chart < 4; ++chart) {
    const ChartOutcome& oc = outcomes[chart];
    if (oc.kind == ChartOutcome::NoWitness) continue;
    res.smooth = false;
    res.reason = oc.kind == ChartOutcome::LineIntersection ? "line-intersection" : "singular-point";
    res.chart = chart;
    res.eliminant = up_to_string(oc.eliminant, oc.eliminant_in_t ? "t" : "s");
    return res;
  }
  res.smooth = true;
  return res;
}

}  // namespace kwall
