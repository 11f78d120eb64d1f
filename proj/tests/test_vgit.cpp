#include <doctest.h>

#include <random>

#include "kwall/vgit.hpp"
#include "kwall/walls.hpp"

using namespace kwall;

namespace {

OnePS sl4(long long a, long long b, long long c, long long d) {
  OnePS s;
  s.weights = {a, b, c, d};
  return s;
}

MultiForm random_linear(std::mt19937_64& rng) {
  Grading h1 = Grading::homogeneous(1);
  std::uniform_int_distribution<int> coeff(-5, 5);
  while (true) {
    MultiForm f = zero_form(h1);
    for (int i = 0; i < 4; ++i) {
      int c = coeff(rng);
      if (c == 0) continue;
      Expo e{0, 0, 0, 0};
      e[i] = 1;
      f = form_add(f, monomial_form(h1, e, Rat(c)));
    }
    if (!f.is_zero()) return f;
  }
}

}  // namespace

TEST_CASE("mu bounds for the normal-form certificates") {
  Grading h2 = Grading::homogeneous(2);
  int d = 4;
  MultiForm q = parse_form("x0 x1", h2);

  SUBCASE("sigma = (-3,1,1,1) with g = x0*h, x1 not dividing h") {
    // h dense in x0,x2,x3 of degree d-1, so mu(g,sigma) = d-4
    MultiForm h = parse_form("x0^3 + x2^3 + x3^3 + x0 x2 x3", Grading::homogeneous(3));
    MultiForm g = form_mul(parse_form("x0", Grading::homogeneous(1)), h);
    OnePS sigma = sl4(-3, 1, 1, 1);
    CHECK(hm_weight(q, sigma) == -2);
    CHECK(hm_weight(g, sigma) == d - 4);
    for (int k = 1; k <= 5; ++k) {
      Rat t = rat_q(k, 10);
      CHECK(vgit_mu_bound(q, g, sigma, t) == Rat(-2) + t * Rat(d - 4));
    }
    CHECK(vgit_mu_bound(q, g, sigma, Rat(0)) == rat_of(hm_weight(q, sigma)));  // slope-zero reduction
  }

  SUBCASE("sigma = (-1,-1,1,1) with a generic section") {
    MultiForm g = generic_section(d, 99);
    OnePS sigma = sl4(-1, -1, 1, 1);
    CHECK(hm_weight(q, sigma) == -2);
    CHECK(hm_weight(g, sigma) == d);
    Rat t = rat_q(1, 3);
    CHECK(vgit_mu_bound(q, g, sigma, t) == Rat(-2) + t * Rat(d));
  }
}

TEST_CASE("destabilizing intervals") {
  int d = 4;
  MultiForm q = quadric_normal_form(QuadricNormalForm::RankTwo);
  MultiForm g = generic_section(d, 7);

  DestabCertificate rank2 = make_certificate(q, g, sl4(-1, -1, 1, 1), d);
  SlopeInterval iv = destabilizing_interval(rank2, d);
  CHECK_FALSE(iv.empty);
  CHECK(iv.lo == 0);
  CHECK(iv.hi == rat_q(2, d));
  CHECK(iv.hi_open);  // -2 + t*d < 0 exactly on (0, 2/d)

  MultiForm q3 = quadric_normal_form(QuadricNormalForm::RankThree);
  DestabCertificate rank3 = make_certificate(q3, g, sl4(3, -1, -1, -1), d);
  SlopeInterval iv3 = destabilizing_interval(rank3, d);
  CHECK(iv3.lo == 0);
  CHECK(iv3.hi == rat_q(2, 3 * d));

  DestabCertificate pos = make_certificate(q, g, sl4(0, 0, 0, 0), d);
  pos.weight_q = 1;
  pos.weight_g = 0;
  CHECK(destabilizing_interval(pos, d).empty);

  // t-independent certificate (-2 + 0*t): destabilizes the full (0, 2/d],
  // Chow endpoint included
  MultiForm h = parse_form("x0^3 + x2^3 + x3^3 + x0 x2 x3", Grading::homogeneous(3));
  MultiForm gq = form_mul(parse_form("x0", Grading::homogeneous(1)), h);
  DestabCertificate nonci = make_certificate(q, gq, sl4(-3, 1, 1, 1), d);
  CHECK(nonci.weight_q == -2);
  CHECK(nonci.weight_g == 0);
  SlopeInterval ivn = destabilizing_interval(nonci, d);
  CHECK_FALSE(ivn.empty);
  CHECK(ivn.lo == 0);
  CHECK(ivn.hi == rat_q(2, d));
  CHECK_FALSE(ivn.hi_open);  // bound is negative at t = 2/d as well

  // the interval is exactly the sign set of the affine bound: 100 samples
  for (int k = 1; k <= 100; ++k) {
    Rat t = rat_q(k, 101) * rat_q(2, d);
    CHECK(iv3.contains(t) == (rank3.bound_at(t) < 0));
    CHECK(iv.contains(t) == (rank2.bound_at(t) < 0));
  }
}

TEST_CASE("restricted polarization") {
  RestrictedPolarization r = restricted_polarization({4, rat_q(1, 4), rat_q(1, 10)});
  CHECK(r.mix_base == rat_q(5, 8));
  CHECK(r.mix_chow == rat_q(3, 32));
  CHECK(r.eta_coeff == 1);
  CHECK(r.xi_coeff == rat_q(1, 4));

  CHECK_THROWS_AS(restricted_polarization({4, rat_q(1, 4), rat_q(1, 6)}), Error);   // delta = 2/(3d)
  CHECK_THROWS_AS(restricted_polarization({4, rat_q(1, 10), rat_q(1, 10)}), Error);  // t = delta

  // 50 random (t, delta) pairs: the mixing identity is audited internally and
  // rechecked here against d*eta + 2*xi
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 50; ++iter) {
    int d = 3 + iter % 5;
    Rat delta = rat_q(1 + iter % 7, 100) * rat_q(2, 3 * d) / rat_q(1, 10) / 10;  // well inside (0, 2/(3d))
    if (delta <= 0 || delta >= rat_q(2, 3 * d)) delta = rat_q(1, 30 * d);
    Rat t = delta + rat_q(1 + iter % 9, 10) * (rat_q(2, d) - delta);
    if (t > rat_q(2, d)) t = rat_q(2, d);
    RestrictedPolarization rp = restricted_polarization({d, t, delta});
    CHECK(rp.mix_base + Rat(d) * rp.mix_chow == 1);
    CHECK(rp.mix_base * delta + 2 * rp.mix_chow == t);
  }
}

TEST_CASE("ample range") {
  CHECK(ample_range(4, rat_q(1, 4)));
  CHECK_FALSE(ample_range(4, rat_q(1, 3)));  // boundary excluded
  CHECK_FALSE(ample_range(3, rat_q(1, 2)));
  CHECK_FALSE(ample_range(4, Rat(0)));
  CHECK(ample_range(5, rat_q(1, 5)));
}

TEST_CASE("quadric rank detection") {
  Grading h2 = Grading::homogeneous(2);
  CHECK(quadric_rank(parse_form("x0^2", h2)) == 1);
  CHECK(quadric_rank(parse_form("x0 x1", h2)) == 2);
  CHECK(quadric_rank(parse_form("x1 x2 - x3^2", h2)) == 3);
  CHECK(quadric_rank(parse_form("x0 x1 - x2 x3", h2)) == 4);
  // diagonalization really diagonalizes
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 12; ++iter) {
    MultiForm l1 = random_linear(rng), l2 = random_linear(rng);
    MultiForm q = form_mul(l1, l2);
    QuadricDiagonalization diag = diagonalize_quadric(q);
    CHECK(diag.rank <= 2);
    MultiForm in_frame = change_coordinates(q, diag.frame);
    for (const auto& [e, c] : in_frame.terms) {
      bool is_square = false;
      for (int i = 0; i < 4; ++i) is_square = is_square || e[i] == 2;
      CHECK(is_square);
    }
  }
}

TEST_CASE("paper-shaped certificates from arbitrary quadrics") {
  std::mt19937_64 rng(12345);
  for (int d : {3, 4, 5, 6}) {
    for (int iter = 0; iter < 5; ++iter) {
      MultiForm l1 = random_linear(rng), l2 = random_linear(rng);
      MultiForm q = iter % 2 ? form_mul(l1, l2) : form_mul(l1, l1);  // rank <= 2
      MultiForm g = generic_section(d, 1000 + iter);
      DestabCertificate cert = low_rank_certificate(q, g, d);
      CHECK(cert.weight_q == -2);
      CHECK(cert.weight_g == d);
      SlopeInterval iv = destabilizing_interval(cert, d);
      CHECK(iv.lo == 0);
      CHECK(iv.hi == rat_q(2, d));  // covers the whole slope range
      CHECK(iv.hi_open);
    }
    // rank 3 built from a singular but not low-rank quadric
    MultiForm q3 = parse_form("x0^2 + x1 x2 + 3 x2^2", Grading::homogeneous(2));
    CHECK(quadric_rank(q3) == 3);
    DestabCertificate cert3 = rank3_certificate(q3, generic_section(d, 77), d);
    SlopeInterval iv3 = destabilizing_interval(cert3, d);
    CHECK(iv3.lo == 0);
    CHECK(iv3.hi == rat_q(2, 3 * d));
  }
}

TEST_CASE("chamber scan") {
  int d = 4;
  std::vector<Rat> walls = wall_table(4).t_walls;

  SUBCASE("rank <= 2 certificates cover every chamber") {
    std::vector<DestabCertificate> certs{
        low_rank_certificate(quadric_normal_form(QuadricNormalForm::RankTwo), generic_section(d, 5), d)};
    for (const ChamberScanEntry& e : chamber_scan(certs, d, walls))
      CHECK(e.status == ChamberStatus::CertifiedUnstable);
  }

  SUBCASE("empty certificate list leaves everything unknown") {
    for (const ChamberScanEntry& e : chamber_scan({}, d, walls)) CHECK(e.status == ChamberStatus::Unknown);
  }

  SUBCASE("a rank-3 certificate covers exactly the chambers below 2/(3d) = 1/6") {
    std::vector<DestabCertificate> certs{
        rank3_certificate(quadric_normal_form(QuadricNormalForm::RankThree), generic_section(d, 6), d)};
    auto entries = chamber_scan(certs, d, walls);
    REQUIRE(entries.size() == 8);
    CHECK(entries[0].hi == rat_q(1, 6));
    CHECK(entries[0].status == ChamberStatus::CertifiedUnstable);
    for (size_t i = 1; i < entries.size(); ++i) CHECK(entries[i].status == ChamberStatus::Unknown);
  }
}
