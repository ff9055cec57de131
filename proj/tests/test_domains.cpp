#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "tubestab/domains.hpp"

using namespace tubestab;

TEST_CASE("lorentz cone inequalities") {
  std::vector<double> a{1.0, 0.5};
  auto r = in_lorentz_cone(a);
  CHECK(r.inside);
  CHECK(r.margin == doctest::Approx(0.75));

  std::vector<double> b{1.0, 1.0};
  auto rb = in_lorentz_cone(b);
  CHECK(!rb.inside);
  CHECK(rb.boundary);

  std::vector<double> c{-1.0, 0.0};
  CHECK(!in_lorentz_cone(c).inside);
}

TEST_CASE("lorentz tube equals cone of imaginary part") {
  std::vector<cplx> e1{cplx(0.0, 1.0), 0.0, 0.0};
  auto r = in_lorentz_tube(e1);
  CHECK(r.inside);
  CHECK(r.margin == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<cplx> realpt{1.0, 0.5, 0.2};
  CHECK(!in_lorentz_tube(realpt).inside);

  Rng rng(103);
  int agree = 0;
  const int total = 2000;
  for (int t = 0; t < total; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    std::vector<cplx> w(n);
    std::vector<double> im(n);
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = rng.cnormal();
      im[j] = w[j].imag();
    }
    const bool tube = in_lorentz_tube(w).inside;
    const bool cone = in_lorentz_cone(im).inside;
    if (tube == cone) ++agree;
  }
  CHECK(agree == total);
}

TEST_CASE("lie ball four characterizations") {
  std::vector<cplx> zero{0.0, 0.0, 0.0};
  for (auto m : {LieBallMethod::eig_formula, LieBallMethod::M_matrix,
                 LieBallMethod::Q_contraction, LieBallMethod::Ppm_pencil}) {
    auto r = in_lie_ball(zero, m);
    CHECK(r.inside);
    if (m == LieBallMethod::eig_formula) CHECK(r.margin == doctest::Approx(1.0));
  }

  // real z: M(z) = ||z||^2 I
  std::vector<cplx> realz{0.5, 0.0};
  CMatrix m = build_M(realz);
  CHECK(m.dist_max(CMatrix::identity(2) * cplx(0.25)) <= 1e-15);

  Rng rng(107);
  int checked = 0, agreed = 0;
  while (checked < 1500) {
    const std::size_t n = 2 + static_cast<std::size_t>(checked % 5);
    std::vector<cplx> z(n);
    const double s = rng.uniform(0.1, 0.8) / std::sqrt(static_cast<double>(n));
    for (auto& x : z) x = s * rng.cnormal();
    auto r0 = in_lie_ball(z, LieBallMethod::eig_formula);
    if (std::abs(r0.margin) < 1e-6 || std::abs(1.0 - z[0]) < 1e-6) continue;
    ++checked;
    const bool v0 = r0.inside;
    const bool v1 = in_lie_ball(z, LieBallMethod::M_matrix).inside;
    const bool v2 = in_lie_ball(z, LieBallMethod::Q_contraction).inside;
    const bool v3 = in_lie_ball(z, LieBallMethod::Ppm_pencil).inside;
    if (v0 == v1 && v1 == v2 && v2 == v3) ++agreed;
  }
  CHECK(agreed == checked);

  // n = 2: matches ||P(z1,z2)|| < 1
  int agree2 = 0, total2 = 0;
  while (total2 < 1000) {
    std::vector<cplx> z{0.6 * rng.cnormal(), 0.6 * rng.cnormal()};
    auto r0 = in_lie_ball(z, LieBallMethod::eig_formula);
    if (std::abs(r0.margin) < 1e-6) continue;
    ++total2;
    const bool pn = op_norm(build_P2(z[0], z[1])) < 1.0;
    if (pn == r0.inside) ++agree2;
  }
  CHECK(agree2 == total2);
}

TEST_CASE("matrix and Siegel upper half spaces") {
  CMatrix zi = CMatrix::identity(3) * cplx(0.0, 1.0);
  CHECK(in_matrix_uhp(zi, false).inside);

  CMatrix bad{{cplx(0.0, 1.0), 0.0}, {0.0, cplx(0.0, -1.0)}};
  CHECK(!in_matrix_uhp(bad, false).inside);

  Rng rng(109);
  for (int t = 0; t < 50; ++t) {
    CMatrix k = tubestab::testing::rand_contraction(rng, 3, 0.8);
    CHECK(in_matrix_uhp(matrix_cayley(k), false).inside);
    // Siegel: symmetrize the contraction first (Z^T = Z survives Cayley)
    CMatrix s = (k + k.transpose()) * cplx(0.5);
    const double nrm = op_norm(s);
    if (nrm >= 0.95) continue;
    CMatrix w = matrix_cayley(s);
    CHECK(in_matrix_uhp(w, true).inside);
  }

  CMatrix nonsym{{0.0, cplx(1.0)}, {cplx(2.0), 0.0}};
  CHECK_THROWS_AS((void)in_matrix_uhp(nonsym, true), Error);
}

TEST_CASE("skew domain") {
  const CMatrix j = skew_J(2);
  // W = -iJ: Im(JW) = Im(-iJ^2) = Im(iI) = I > 0
  CHECK(in_skew_domain(j * cplx(0.0, -1.0)).inside);
  // W = iJ: Im(JW) = -I < 0
  CHECK(!in_skew_domain(j * cplx(0.0, 1.0)).inside);
  // W = 0 is boundary
  auto r0 = in_skew_domain(CMatrix(4, 4));
  CHECK(!r0.inside);
  CHECK(r0.boundary);
}

TEST_CASE("exceptional domains") {
  std::vector<cplx> zero(27, 0.0);
  auto rb = in_exceptional_bounded(zero);
  CHECK(rb.inside);
  CHECK(rb.margin == doctest::Approx(1.0));

  // i-patterned tube point
  std::vector<cplx> w(27, 0.0);
  w[0] = w[17] = w[26] = cplx(0.0, 1.0);
  CHECK(in_exceptional_tube(build_Omega(w)[0]).inside);

  // pattern violation
  CMatrix broken = build_Omega(w)[0];
  broken(2, 2) += 1.0;  // breaks the w22 I_8 block
  CHECK_THROWS_AS((void)in_exceptional_tube(broken), Error);
}

TEST_CASE("T27 triple equivalence on random samples") {
  Rng rng(113);
  int checked = 0, agreed = 0;
  while (checked < 400) {
    std::vector<cplx> w(27);
    const double vs = rng.uniform(0.05, 0.6);
    for (auto& x : w) x = {rng.normal(), vs * rng.normal()};
    w[0] = {w[0].real(), rng.uniform(0.0, 1.5)};
    w[17] = {w[17].real(), rng.uniform(0.0, 1.5)};
    w[26] = {w[26].real(), rng.uniform(0.0, 1.5)};
    const auto omegas = build_Omega(w);
    double margins[3];
    for (int i = 0; i < 3; ++i) margins[i] = min_eig_herm(imag_part(omegas[static_cast<std::size_t>(i)]));
    if (std::min({std::abs(margins[0]), std::abs(margins[1]), std::abs(margins[2])}) < 1e-8)
      continue;
    ++checked;
    const bool a = margins[0] > 0, b = margins[1] > 0, c = margins[2] > 0;
    if (a == b && b == c) ++agreed;
  }
  CHECK(agreed == checked);
}

TEST_CASE("schur complement route for the 17x17 pattern") {
  // PD of the full matrix iff y33 > 0 and the 9x9 complement is PD
  Rng rng(127);
  for (int t = 0; t < 60; ++t) {
    std::vector<cplx> w(27);
    const double vs = rng.uniform(0.05, 0.5);
    for (auto& x : w) x = {0.0, vs * rng.normal()};
    w[0] = {0.0, rng.uniform(0.05, 1.5)};
    w[17] = {0.0, rng.uniform(0.05, 1.5)};
    w[26] = {0.0, rng.uniform(0.05, 1.5)};
    const CMatrix im = imag_part(build_Omega(w)[0]);
    const double full = min_eig_herm(im);
    if (std::abs(full) < 1e-8) continue;
    const double y33 = im(9, 9).real();
    bool equiv;
    if (y33 <= 0.0) {
      equiv = full <= 0.0;
    } else {
      const CMatrix sc = schur_complement(im, 9, 17);
      equiv = (full > 0.0) == (min_eig_herm(sc) > 0.0 && y33 > 0.0);
    }
    CHECK(equiv);
  }
}

TEST_CASE("samplers produce members with the requested margins") {
  SampleOptions opt;
  opt.exec = Exec::serial;

  auto check_kind = [&](DomainSpec spec, std::size_t count) {
    auto pts = sample(spec, count, 42, SampleRegion::interior, opt);
    for (const auto& p : pts) {
      auto r = membership(spec, p);
      CHECK(r.inside);
      CHECK(r.margin >= opt.margin_floor * (1.0 - 1e-12));
    }
    auto nb = sample(spec, count / 2 + 1, 43, SampleRegion::near_boundary, opt);
    for (const auto& p : nb) {
      auto r = membership(spec, p);
      CHECK(r.inside);
      CHECK(r.margin <= opt.boundary_band + 1e-12);
    }
  };

  DomainSpec pd;
  pd.kind = DomainSpec::Kind::polydisk;
  pd.dim = 2;
  check_kind(pd, 25);

  DomainSpec hp;
  hp.kind = DomainSpec::Kind::halfplane_tube;
  hp.dim = 2;
  check_kind(hp, 25);

  DomainSpec lb;
  lb.kind = DomainSpec::Kind::lie_ball;
  lb.dim = 4;
  check_kind(lb, 25);

  DomainSpec lt;
  lt.kind = DomainSpec::Kind::lorentz_tube;
  lt.dim = 3;
  check_kind(lt, 25);

  DomainSpec mu;
  mu.kind = DomainSpec::Kind::matrix_uhp;
  mu.dim = 2;
  check_kind(mu, 15);

  DomainSpec su;
  su.kind = DomainSpec::Kind::siegel_uhp;
  su.dim = 2;
  check_kind(su, 15);

  DomainSpec sk;
  sk.kind = DomainSpec::Kind::skew_domain;
  sk.dim = 2;
  check_kind(sk, 15);

  DomainSpec cp;
  cp.kind = DomainSpec::Kind::cartan_product;
  cp.factors = {{false, 2, 1}, {true, 2, 1}};
  check_kind(cp, 10);

  DomainSpec be;
  be.kind = DomainSpec::Kind::bounded_exceptional27;
  check_kind(be, 8);

  DomainSpec et;
  et.kind = DomainSpec::Kind::exceptional_tube27;
  check_kind(et, 8);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  DomainSpec lb;
  lb.kind = DomainSpec::Kind::lie_ball;
  lb.dim = 3;
  SampleOptions ser;
  ser.exec = Exec::serial;
  SampleOptions par;
  par.exec = Exec::parallel;
  auto a = sample(lb, 40, 7, SampleRegion::interior, ser);
  auto b = sample(lb, 40, 7, SampleRegion::interior, par);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(a[i][j] == b[i][j]);
}
