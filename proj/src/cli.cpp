#include "kwall/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kwall/census.hpp"
#include "kwall/chow.hpp"
#include "kwall/hm.hpp"
#include "kwall/localvol.hpp"
#include "kwall/report.hpp"
#include "kwall/smoothness.hpp"
#include "kwall/vgit.hpp"
#include "kwall/walls.hpp"

namespace kwall::cli {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_us(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

Grading parse_grading(const std::string& s) {
  if (s.rfind("P3:", 0) == 0) return Grading::homogeneous(std::stoi(s.substr(3)));
  auto comma = s.find(',');
  if (comma == std::string::npos) fail(ErrorCode::Parse, "grading must be 'a,b' or 'P3:k'");
  return Grading::bidegree(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  std::string s = os.str();
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::array<long long, 4> parse_weights(const std::string& s) {
  std::array<long long, 4> w{};
  std::stringstream ss(s);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',') && i < 4) w[i++] = std::stoll(item);
  if (i != 4) fail(ErrorCode::Parse, "expected four comma-separated weights");
  return w;
}

std::pair<Rat, Rat> parse_interval(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) fail(ErrorCode::Parse, "interval must be 'lo,hi'");
  return {rat_from_string(s.substr(0, comma)), rat_from_string(s.substr(comma + 1))};
}

Json polytope_json(const WeightPolytope& wp) {
  Json j;
  j["torus"] = wp.torus == Torus::SL2xSL2 ? "SL2xSL2" : "SL4diag";
  j["support"] = wp.support;
  j["hull"] = wp.hull;
  return j;
}

Json certificate_json(const OnePS& sigma, long long support_min_weight) {
  Json j;
  j["weights"] = sigma.weights;
  j["frame"] = sigma.frame ? "custom" : "standard";
  j["support_min_weight"] = support_min_weight;
  return j;
}

Json upoly_json(const UPoly& p) {
  Json coeffs = Json::array();
  for (const Rat& c : p) coeffs.push_back(rat_to_string(c));
  return Json{{"coefficients", coeffs}, {"display", up_to_string(p, "c")}};
}

Json chow_json(const ChowClass& a) {
  Json terms = Json::array();
  for (const auto& [e, c] : a.terms) {
    Json cj = Json::array();
    for (const Rat& v : c) cj.push_back(rat_to_string(v));
    terms.push_back(Json{{"exponents", e}, {"coeff_poly_in_c", cj}});
  }
  return Json{{"ambient", a.ambient == Ambient::QuadricBundle ? "P3xPE" : "P1P1xP"},
              {"terms", terms}};
}

MultiForm load_form(const std::string& form_text, const std::string& file, const Grading& g) {
  if (!form_text.empty()) return parse_form(form_text, g);
  if (!file.empty()) return parse_form(read_text_file(file), g);
  fail(ErrorCode::Parse, "provide --form or --file");
}

// ---------------------------------------------------------------------------

int cmd_stability(const std::string& grading_s, const std::string& form_text,
                  const std::string& file, bool with_smooth, std::ostream& out) {
  auto t0 = Clock::now();
  Grading g = parse_grading(grading_s);
  MultiForm f = load_form(form_text, file, g);
  Torus torus = g.kind == GradingKind::Bidegree ? Torus::SL2xSL2 : Torus::SL4diag;

  Json result;
  result["form"] = form_to_string(f);
  WeightPolytope wp = weight_polytope(f, torus);
  result["weight_polytope"] = polytope_json(wp);
  StabilityResult sr = torus_semistable(f, torus);
  result["status"] = sr.semistable ? "Semistable" : "Unstable";
  if (sr.certificate) {
    std::vector<long long> reduced;
    if (torus == Torus::SL2xSL2)
      reduced = {sr.certificate->weights[0], sr.certificate->weights[2]};
    else
      reduced = {sr.certificate->weights[0], sr.certificate->weights[1], sr.certificate->weights[2],
                 sr.certificate->weights[3]};
    result["certificate"] = certificate_json(*sr.certificate, -polytope_max_weight(wp, reduced));
  }
  InstabilityMeasure im = instability_measure(f, torus);
  result["instability_measure"] = json_rat(im.dist2);
  Json nearest = Json::array();
  for (const Rat& v : im.nearest) nearest.push_back(rat_to_string(v));
  result["nearest_point"] = nearest;
  if (with_smooth) {
    SmoothnessResult sm = is_smooth_curve(f);
    result["smooth"] = sm.smooth;
    if (!sm.smooth)
      result["smoothness"] = Json{{"reason", sm.reason}, {"chart", sm.chart}, {"eliminant", sm.eliminant}};
  }
  Json inputs{{"grading", g.describe()}, {"form", form_to_string(f)}};
  out << make_report("stability", inputs, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

MultiForm resolve_quadric(const std::string& spec) {
  Grading g2 = Grading::homogeneous(2);
  if (spec == "rank1") return quadric_normal_form(QuadricNormalForm::RankOne);
  if (spec == "rank2" || spec == "xy") return quadric_normal_form(QuadricNormalForm::RankTwo);
  if (spec == "rank3") return quadric_normal_form(QuadricNormalForm::RankThree);
  if (spec == "rank4") return quadric_normal_form(QuadricNormalForm::RankFour);
  return parse_form(spec, g2);
}

MultiForm resolve_section(const std::string& spec, int d) {
  if (spec.rfind("generic", 0) == 0) {
    std::uint64_t seed = 2024;
    auto colon = spec.find(':');
    if (colon != std::string::npos) seed = std::stoull(spec.substr(colon + 1));
    return generic_section(d, seed);
  }
  return parse_form(spec, Grading::homogeneous(d));
}

int cmd_vgit(int d, const std::string& q_spec, const std::string& g_spec, const std::string& sigma_s,
             const std::string& t_s, bool scan, std::ostream& out) {
  auto t0 = Clock::now();
  MultiForm q = resolve_quadric(q_spec);
  MultiForm g = resolve_section(g_spec, d);

  Json result;
  result["d"] = d;
  result["quadric_rank"] = quadric_rank(q);

  if (!sigma_s.empty()) {
    OnePS sigma;
    sigma.weights = parse_weights(sigma_s);
    DestabCertificate cert = make_certificate(q, g, sigma, d);
    result["mu_q"] = cert.weight_q;
    result["mu_g"] = cert.weight_g;
    if (!t_s.empty()) {
      Rat t = rat_from_string(t_s);
      result["mu_bound_at_t"] = json_rat(cert.bound_at(t));
    }
    SlopeInterval iv = destabilizing_interval(cert, d);
    result["destabilizing_interval"] = iv.to_string();
  }

  if (scan) {
    std::vector<DestabCertificate> certs;
    certs.push_back(low_rank_certificate(quadric_normal_form(QuadricNormalForm::RankTwo),
                                         generic_section(d, 11), d));
    certs.push_back(rank3_certificate(quadric_normal_form(QuadricNormalForm::RankThree),
                                      generic_section(d, 12), d));
    std::vector<Rat> t_walls;
    if (d == 4) t_walls = wall_table(4).t_walls;
    Json chambers = Json::array();
    Json walls_json = Json::array();
    for (const Rat& w : t_walls) walls_json.push_back(rat_to_string(w));
    for (const ChamberScanEntry& e : chamber_scan(certs, d, t_walls)) {
      Json cj;
      cj["interval"] = "(" + rat_to_string(e.lo) + ", " + rat_to_string(e.hi) + ")";
      cj["status"] = e.status == ChamberStatus::CertifiedUnstable ? "CertifiedUnstable" : "Unknown";
      if (e.certificate_index >= 0) cj["certificate"] = certs[e.certificate_index].note;
      chambers.push_back(cj);
    }
    result["walls"] = walls_json;
    result["chambers"] = chambers;
  }

  Json inputs{{"d", d}, {"q", form_to_string(q)}, {"g", form_to_string(g)}};
  if (!sigma_s.empty()) inputs["sigma"] = sigma_s;
  out << make_report("vgit", inputs, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

int cmd_cm(int d, const std::string& c_s, bool check_prop, bool with_p44, std::ostream& out) {
  auto t0 = Clock::now();
  Json result;
  result["d"] = d;
  CmClass cm = cm_class_pe(d);
  result["eta_coeff"] = upoly_json(cm.eta_coeff);
  result["xi_coeff"] = upoly_json(cm.xi_coeff);
  ChowClass base = chow_add(chow_term(Ambient::QuadricBundle, SymExpo{0, 1, 0}, cm.eta_coeff),
                            chow_term(Ambient::QuadricBundle, SymExpo{0, 0, 1}, cm.xi_coeff));
  result["class_pe"] = chow_json(base);
  if (with_p44) {
    UPoly p44 = cm_class_p44(d);
    result["p44_H_coeff"] = upoly_json(p44);
    result["class_p44"] = chow_json(chow_term(Ambient::P11Product, SymExpo{0, 0, 1}, p44));
  }
  if (check_prop) {
    if (c_s.empty()) fail(ErrorCode::Parse, "--check-proportionality needs --c");
    Rat c = rat_from_string(c_s);
    Proportionality p = proportionality_check(d, c);
    result["proportionality"] = Json{{"c", rat_to_string(c)}, {"rho", rat_to_string(p.rho)},
                                     {"t", rat_to_string(p.t)}};
  }
  Json inputs{{"d", d}};
  if (!c_s.empty()) inputs["c"] = c_s;
  out << make_report("cm", inputs, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

int cmd_walls(int d, const std::string& format, std::ostream& out) {
  auto t0 = Clock::now();
  const WallTable& t = wall_table(d);
  if (format == "table") {
    out << "i | c | t | beta\n";
    for (size_t i = 0; i < t.c_walls.size(); ++i)
      out << i + 1 << " | " << rat_to_string(t.c_walls[i]) << " | " << rat_to_string(t.t_walls[i])
          << " | " << rat_to_string(t.beta_walls[i]) << "\n";
    for (const CatalogRow& row : t.rows)
      out << "wall " << row.index << " (c=" << rat_to_string(row.c) << "): " << row.minus_label
          << (row.minus_equation.empty() ? "" : ": " + row.minus_equation) << "  ->  " << row.plus_label
          << "\n";
    return 0;
  }
  Json result;
  result["d"] = t.d;
  Json cw = Json::array(), tw = Json::array(), bw = Json::array();
  for (const Rat& v : t.c_walls) cw.push_back(rat_to_string(v));
  for (const Rat& v : t.t_walls) tw.push_back(rat_to_string(v));
  for (const Rat& v : t.beta_walls) bw.push_back(rat_to_string(v));
  result["c_walls"] = cw;
  result["t_walls"] = tw;
  result["beta_walls"] = bw;
  Json rows = Json::array();
  for (const CatalogRow& row : t.rows)
    rows.push_back(Json{{"index", row.index},
                        {"c", rat_to_string(row.c)},
                        {"minus_label", row.minus_label},
                        {"minus_equation", row.minus_equation},
                        {"plus_label", row.plus_label}});
  result["catalog"] = rows;
  out << make_report("walls", Json{{"d", d}}, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

int cmd_markov(long bound, bool with_wps, std::ostream& out) {
  auto t0 = Clock::now();
  Json result;
  Json triples = Json::array();
  for (const MarkovTriple& t : markov_enumerate(bound)) {
    Json j{{"a", t.a}, {"b", t.b}, {"c", t.c}};
    if (with_wps) j["weighted_projective"] = weighted_projective_from_markov(t);
    triples.push_back(j);
  }
  result["bound"] = bound;
  result["triples"] = triples;
  out << make_report("markov", Json{{"bound", bound}}, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

int cmd_exclude(long e, long n, long a, int d, const std::string& interval_s, std::ostream& out) {
  auto t0 = Clock::now();
  auto [lo, hi] = parse_interval(interval_s);
  QuotientSing sing{e, n, a};
  ExclusionResult res = exclude_singularity(sing, d, lo, hi);
  Json result;
  result["singularity"] = sing.type_string();
  result["d"] = d;
  result["interval"] = "(" + rat_to_string(lo) + ", " + rat_to_string(hi) + ")";
  result["outcome"] = res.excluded ? "Excluded" : "Inconclusive";
  result["degree_bound"] = res.degree_bound;
  result["no_admissible_monomials"] = res.no_admissible;
  Json cands = Json::array();
  for (const ExclusionCandidate& c : res.candidates) {
    Json j{{"i", c.i}, {"j", c.j}, {"status", c.status}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.refined_wD > 0) j["refined_wD"] = c.refined_wD;
    if (c.witness_c) j["witness_c"] = rat_to_string(*c.witness_c);
    cands.push_back(j);
  }
  result["candidates"] = cands;
  if (res.witness)
    result["witness"] = Json{{"i", res.witness->i},
                             {"j", res.witness->j},
                             {"c", res.witness->witness_c ? rat_to_string(*res.witness->witness_c) : ""}};
  Json inputs{{"e", e}, {"n", n}, {"a", a}, {"d", d}, {"interval", interval_s}};
  out << make_report("exclude", inputs, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

int cmd_lct(const std::string& entry, const std::string& monomials_s, std::ostream& out) {
  auto t0 = Clock::now();
  PlaneCurveGerm germ;
  if (!entry.empty()) {
    germ = catalog_germ(entry);
  } else if (!monomials_s.empty()) {
    germ.label = "custom";
    std::stringstream ss(monomials_s);
    std::string item;
    while (std::getline(ss, item, ';')) {
      auto comma = item.find(',');
      if (comma == std::string::npos) fail(ErrorCode::Parse, "monomials must be 'i,j;i,j;...'");
      germ.monomials.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
      germ.has_parameter.push_back(false);
    }
  } else {
    fail(ErrorCode::Parse, "provide --entry or --monomials");
  }
  LctResult r = lct_from_monomials(germ);
  Json result;
  result["label"] = germ.label;
  result["lct"] = rat_to_string(r.lct);
  result["skoda_bound"] = rat_to_string(r.skoda_bound);
  result["multiplicity"] = r.multiplicity;
  result["quasihomogeneous"] = r.quasihomogeneous;
  result["nondegenerate_certain"] = r.nondegenerate_certain;
  if (!r.caveat.empty()) result["caveat"] = r.caveat;
  Json inputs{{"entry", entry}, {"monomials", monomials_s}};
  out << make_report("lct", inputs, result, elapsed_us(t0)).dump(2) << "\n";
  return 0;
}

std::vector<CensusFrame> load_frames(const std::string& path) {
  std::vector<CensusFrame> frames;
  if (path.empty()) return frames;
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Parse, "invalid JSON in frames file");
  for (const auto& fj : j) {
    CensusFrame fr;
    fr.name = fj.at("name").get<std::string>();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        fr.xblock[r][c] = rat_from_string(fj.at("x")[r][c].get<std::string>());
        fr.yblock[r][c] = rat_from_string(fj.at("y")[r][c].get<std::string>());
      }
    frames.push_back(fr);
  }
  return frames;
}

int cmd_census(const std::string& dir, const std::string& grading_s, const std::string& frames_path,
               int jobs, bool serial, std::ostream& out) {
  CensusOptions opts;
  opts.grading = parse_grading(grading_s);
  opts.frames = load_frames(frames_path);
  opts.jobs = jobs;
  CensusOutput res = serial ? run_census_serial(dir, opts) : run_census(dir, opts);
  out << res.to_stream();
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact wall-crossing toolkit for curves on quadric surfaces"};
  app.require_subcommand(1);

  std::string grading = "4,4", form_text, file;
  bool with_smooth = false;
  auto* stab = app.add_subcommand("stability", "torus stability of a form");
  stab->add_option("--grading", grading, "'a,b' for bidegree or 'P3:k'");
  stab->add_option("--form", form_text, "polynomial text");
  stab->add_option("--file", file, "file with polynomial text");
  stab->add_flag("--smooth", with_smooth, "include the smoothness probe");

  int vd = 4;
  std::string q_spec = "rank2", g_spec = "generic", sigma_s, t_s;
  bool scan = false;
  auto* vg = app.add_subcommand("vgit", "slope-dependent destabilization certificates");
  vg->add_option("--d", vd, "section degree");
  vg->add_option("--q", q_spec, "quadric: rank1|rank2|rank3|rank4 or polynomial text");
  vg->add_option("--g", g_spec, "section: 'generic[:seed]' or polynomial text");
  vg->add_option("--sigma", sigma_s, "1-PS weights 'a,b,c,d'");
  vg->add_option("--t", t_s, "slope value");
  vg->add_flag("--scan", scan, "chamber scan against the d=4 walls");

  int cd = 4;
  std::string c_s;
  bool check_prop = false, with_p44 = false;
  auto* cm = app.add_subcommand("cm", "CM classes of the universal families");
  cm->add_option("--d", cd, "section degree");
  cm->add_option("--c", c_s, "weight for the proportionality check");
  cm->add_flag("--check-proportionality", check_prop);
  cm->add_flag("--p44", with_p44, "include the product-family class");

  int wd = 4;
  std::string wformat = "json";
  auto* wl = app.add_subcommand("walls", "aligned wall tables and the singularity catalog");
  wl->add_option("--d", wd);
  wl->add_option("--format", wformat)->check(CLI::IsMember({"json", "table"}));

  long mbound = 100;
  bool with_wps = false;
  auto* mk = app.add_subcommand("markov", "solutions of a^2+b^2+2c^2=4abc");
  mk->add_option("--bound", mbound);
  mk->add_flag("--wps", with_wps, "include weighted projective planes");

  long xe = 1, xn = 3, xa = 1;
  int xd = 4;
  std::string xinterval = "0,1/2";
  auto* ex = app.add_subcommand("exclude", "normalized-volume exclusion of a quotient singularity");
  ex->add_option("--e", xe);
  ex->add_option("--n", xn);
  ex->add_option("--a", xa);
  ex->add_option("--d", xd);
  ex->add_option("--interval", xinterval, "'lo,hi' weight window");

  std::string lct_entry, lct_monomials;
  auto* lc = app.add_subcommand("lct", "log canonical threshold of cataloged singularities");
  lc->add_option("--entry", lct_entry, "catalog label, e.g. E_12 or A_3");
  lc->add_option("--monomials", lct_monomials, "'i,j;i,j;...'");

  std::string cdir, cgrading = "4,4", cframes;
  int cjobs = 0;
  bool cserial = false;
  auto* cs = app.add_subcommand("census", "batch smoothness/stability over a directory of curves");
  cs->add_option("--dir", cdir)->required();
  cs->add_option("--grading", cgrading);
  cs->add_option("--frames", cframes, "JSON file of torus frames");
  cs->add_option("--jobs", cjobs, "worker count (0 = default)");
  cs->add_flag("--serial", cserial, "use the serial reference driver");

  std::vector<std::string> argv = args;
  std::string command = argv.empty() ? "" : argv[0];
  try {
    std::vector<const char*> cargs;
    cargs.push_back("kwall");
    for (const std::string& a : argv) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (stab->parsed()) return cmd_stability(grading, form_text, file, with_smooth, out);
    if (vg->parsed()) return cmd_vgit(vd, q_spec, g_spec, sigma_s, t_s, scan, out);
    if (cm->parsed()) return cmd_cm(cd, c_s, check_prop, with_p44, out);
    if (wl->parsed()) return cmd_walls(wd, wformat, out);
    if (mk->parsed()) return cmd_markov(mbound, with_wps, out);
    if (ex->parsed()) return cmd_exclude(xe, xn, xa, xd, xinterval, out);
    if (lc->parsed()) return cmd_lct(lct_entry, lct_monomials, out);
    if (cs->parsed()) return cmd_census(cdir, cgrading, cframes, cjobs, cserial, out);
  } catch (const Error& e) {
    out << make_error_report(command, e).dump(2) << "\n";
    switch (e.code()) {
      case ErrorCode::Parse:
      case ErrorCode::Grading:
      case ErrorCode::Io:
        return 2;
      default:
        return 1;
    }
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace kwall::cli
