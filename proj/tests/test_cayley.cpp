#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "tubestab/cayley.hpp"
#include "tubestab/domains.hpp"

using namespace tubestab;
using tubestab::testing::rand_cmatrix;

namespace {

std::vector<cplx> rand_lie_ball_point(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<cplx> z(n);
    const double s = rng.uniform(0.05, 0.7) / std::sqrt(static_cast<double>(n));
    for (auto& x : z) x = s * rng.cnormal();
    if (in_lie_ball(z, LieBallMethod::eig_formula).margin > 0.02) return z;
  }
}

CMatrix rand_skew_contraction(Rng& rng, std::size_t half, double norm) {
  CMatrix g = rand_cmatrix(rng, 2 * half, 2 * half);
  CMatrix z = (g - g.transpose()) * cplx(0.5);
  const double s = op_norm(z);
  return z * cplx(norm / (s > 0 ? s : 1.0));
}

}  // namespace

TEST_CASE("scalar phi") {
  CHECK(std::abs(phi(0.0) - cplx(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(phi_inv(cplx(0.0, 1.0))) <= 1e-15);
  CHECK(std::abs(phi(0.5) - cplx(0.0, 3.0)) <= 1e-14);
  CHECK_THROWS_AS((void)phi(1.0), Error);
  CHECK_THROWS_AS((void)phi_inv(cplx(0.0, -1.0)), Error);
}

TEST_CASE("jordan product") {
  JordanVector e{1.0, 0.0, 0.0, 0.0};
  Rng rng(41);
  SUBCASE("neutral element") {
    JordanVector u{rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()};
    auto ue = jordan_mul(u, e);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ue[i] - u[i]) <= 1e-15);
  }
  SUBCASE("nonassociativity witness (f3 f2) f2 = 0 != f3 = f3 (f2 f2)") {
    JordanVector f2{0.0, 1.0, 0.0, 0.0}, f3{0.0, 0.0, 1.0, 0.0};
    auto lhs = jordan_mul(jordan_mul(f3, f2), f2);
    for (const auto& x : lhs) CHECK(x == cplx(0.0));
    auto rhs = jordan_mul(f3, jordan_mul(f2, f2));
    for (std::size_t i = 0; i < 4; ++i) CHECK(rhs[i] == f3[i]);
  }
  SUBCASE("inverse formula") {
    for (int t = 0; t < 100; ++t) {
      JordanVector u(5);
      for (auto& x : u) x = rng.cnormal();
      cplx q = u[0] * u[0];
      for (std::size_t j = 1; j < 5; ++j) q -= u[j] * u[j];
      if (std::abs(q) < 1e-3) continue;
      auto prod = jordan_mul(u, jordan_inv(u));
      CHECK(std::abs(prod[0] - cplx(1.0)) <= 1e-11);
      for (std::size_t j = 1; j < 5; ++j) CHECK(std::abs(prod[j]) <= 1e-11);
    }
  }
  SUBCASE("singular element rejected") {
    JordanVector u{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)jordan_inv(u), Error);
  }
}

TEST_CASE("Phi_n maps and inverse") {
  std::vector<cplx> zero{0.0, 0.0, 0.0};
  auto w = Phi_n(zero);
  CHECK(std::abs(w[0] - cplx(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(w[1]) <= 1e-15);
  std::vector<cplx> i0{cplx(0.0, 1.0), 0.0, 0.0};
  auto z = Phi_n_inv(i0);
  for (const auto& x : z) CHECK(std::abs(x) <= 1e-15);

  Rng rng(43);
  SUBCASE("round trip on interior points") {
    for (int t = 0; t < 200; ++t) {
      auto p = rand_lie_ball_point(rng, 2 + static_cast<std::size_t>(t % 5));
      auto back = Phi_n_inv(Phi_n(p));
      double worst = 0.0;
      for (std::size_t j = 0; j < p.size(); ++j) worst = std::max(worst, std::abs(back[j] - p[j]));
      CHECK(worst <= 1e-10);
    }
  }
  SUBCASE("jordan Cayley form agrees") {
    for (int t = 0; t < 200; ++t) {
      std::vector<cplx> p(2 + static_cast<std::size_t>(t % 5));
      for (auto& x : p) x = 0.45 * rng.cnormal();
      auto direct = Phi_n(p);
      auto jordan = Phi_n_jordan_form(p);
      double worst = 0.0;
      for (std::size_t j = 0; j < p.size(); ++j)
        worst = std::max(worst, std::abs(direct[j] - jordan[j]));
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("Phi_2 pencil link") {
  auto link0 = Phi_2_pencil_link(0.0, 0.0);
  CHECK(std::abs(link0.w[0] - cplx(0.0, 1.0)) <= 1e-14);
  CHECK(std::abs(link0.w[1]) <= 1e-14);
  CHECK(link0.consistency <= 1e-12);

  Rng rng(47);
  double worst = 0.0;
  int checked = 0;
  while (checked < 300) {
    auto z = rand_lie_ball_point(rng, 2);
    auto link = Phi_2_pencil_link(z[0], z[1]);
    worst = std::max(worst, link.consistency);
    // membership transfer L2 -> T_C2
    std::array<cplx, 2> w{link.w[0], link.w[1]};
    CHECK(in_lorentz_tube(w).inside);
    ++checked;
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("psi and its inverse") {
  const CMatrix j2 = skew_J(2);
  CHECK(psi(CMatrix(4, 4)).dist_max(j2 * cplx(0.0, -1.0)) <= 1e-14);  // psi(0) = -iJ

  Rng rng(53);
  double worst_rt = 0.0, worst_skew = 0.0;
  for (int t = 0; t < 100; ++t) {
    CMatrix z = rand_skew_contraction(rng, 2 + static_cast<std::size_t>(t % 2), 0.85);
    CMatrix w = psi(z);
    worst_skew = std::max(worst_skew, w.dist_max(w.transpose() * cplx(-1.0)));
    worst_rt = std::max(worst_rt, psi_inv(w).dist_max(z));
    CHECK(in_skew_domain(w).inside);
  }
  CHECK(worst_rt <= 1e-10);
  CHECK(worst_skew <= 1e-11);

  CMatrix not_skew = CMatrix::identity(4);
  CHECK_THROWS_AS((void)psi(not_skew), Error);
}

TEST_CASE("psi image is skew-symmetric") {
  Rng rng(59);
  for (int t = 0; t < 20; ++t) {
    CMatrix z = rand_skew_contraction(rng, 2, 0.8);
    CMatrix w = psi(z);
    CHECK(w.dist_max(w.transpose() * cplx(-1.0)) <= 1e-11);
  }
}

TEST_CASE("structured builders") {
  SUBCASE("W((i,0,...,0)) = iI") {
    std::vector<cplx> w{cplx(0.0, 1.0), 0.0, 0.0, 0.0};
    CHECK(build_W(w).dist_max(CMatrix::identity(4) * cplx(0.0, 1.0)) <= 1e-15);
  }
  SUBCASE("P- = Q P+ entrywise") {
    Rng rng(61);
    for (int t = 0; t < 50; ++t) {
      std::vector<cplx> z(4);
      for (auto& x : z) x = 0.4 * rng.cnormal();
      auto [pp, pm] = build_Ppm(z);
      CHECK(pm.dist_max(build_Q(z) * pp) <= 1e-12);
    }
  }
  SUBCASE("phi^{-1}(W(Phi_n(z))) = Q(z)") {
    Rng rng(67);
    for (int t = 0; t < 200; ++t) {
      auto z = rand_lie_ball_point(rng, 3 + static_cast<std::size_t>(t % 3));
      CMatrix lhs = matrix_cayley_inv(build_W(Phi_n(z)));
      CHECK(lhs.dist_max(build_Q(z)) <= 1e-10);
    }
  }
  SUBCASE("S_r, T_r specialize to P+- at r = 1") {
    std::vector<cplx> z{cplx(0.2, 0.1), cplx(-0.3), cplx(0.05, -0.2)};
    auto [s1, t1] = build_Sr_Tr(z, 1.0);
    auto [pp, pm] = build_Ppm(z);
    CHECK(s1.dist_max(pp) == 0.0);
    CHECK(t1.dist_max(pm) == 0.0);
  }
}

TEST_CASE("Clifford generators") {
  const auto& t = generators_T();
  SUBCASE("T1 is the diagonal sign matrix") {
    CMatrix expect(8, 8);
    expect(0, 0) = 1.0;
    for (int i = 1; i < 8; ++i) expect(i, i) = -1.0;
    CHECK(t[0].dist_max(expect) == 0.0);
  }
  SUBCASE("all 64 relations, exact") {
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j) {
        CMatrix lhs = t[static_cast<std::size_t>(k)].transpose() * t[static_cast<std::size_t>(j)] +
                      t[static_cast<std::size_t>(j)].transpose() * t[static_cast<std::size_t>(k)];
        CMatrix expect = (j == k) ? CMatrix::identity(8) * cplx(2.0) : CMatrix(8, 8);
        CHECK(lhs.dist_max(expect) == 0.0);
      }
  }
  SUBCASE("Y(w)^T Y(w) = (sum w_j^2) I = Y(w) Y(w)^T") {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
      auto w = rng.cnormal_vec(8);
      cplx s = 0.0;
      for (const auto& x : w) s += x * x;
      CMatrix y = build_Y(w);
      CMatrix expect = CMatrix::identity(8) * s;
      CHECK((y.transpose() * y).dist_max(expect) <= 1e-12 * (1.0 + std::abs(s)));
      CHECK((y * y.transpose()).dist_max(expect) <= 1e-12 * (1.0 + std::abs(s)));
    }
  }
  SUBCASE("switch identity Y(z)y = T1 Y(y) z") {
    Rng rng(73);
    for (int trial = 0; trial < 50; ++trial) {
      auto y = rng.cnormal_vec(8);
      auto z = rng.cnormal_vec(8);
      auto lhs = build_Y(z).apply(y);
      auto rhs = (t[0] * build_Y(y)).apply(z);
      for (int i = 0; i < 8; ++i)
        CHECK(std::abs(lhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]) <=
              1e-13);
    }
  }
}

TEST_CASE("X(zeta) and the determinant factorization") {
  std::vector<cplx> zero(27, 0.0);
  CHECK(build_X_zeta(zero).norm_max() == 0.0);

  Rng rng(79);
  for (int t = 0; t < 50; ++t) {
    std::vector<cplx> zeta(27);
    for (auto& x : zeta) x = 0.25 * rng.cnormal();
    const cplx w1 = zeta[0], w2 = zeta[17], w3 = zeta[26];
    cplx ztz = 0.0;
    for (int j = 0; j < 8; ++j) ztz += zeta[18 + j] * zeta[18 + j];
    const CMatrix x = build_X_zeta(zeta);
    const cplx lhs = determinant(CMatrix::identity(17) - x);
    cplx rhs = (1.0 - w1);
    cplx base = (1.0 - w2) * (1.0 - w3) - ztz;
    for (int i = 0; i < 8; ++i) rhs *= base;
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
  }
}

TEST_CASE("block cayley closed form") {
  Rng rng(83);
  SUBCASE("zero coupling gives block diagonal phi(w) + phi(Z)") {
    CMatrix z = rand_cmatrix(rng, 4, 4) * cplx(0.15);
    std::vector<cplx> psi0(4, 0.0);
    const cplx w(0.2, -0.1);
    CMatrix got = block_cayley_2x2(w, psi0, z);
    CHECK(std::abs(got(0, 0) - phi(w)) <= 1e-12);
    CHECK(got.block(1, 5, 1, 5).dist_max(matrix_cayley(z)) <= 1e-12);
    for (int j = 1; j < 5; ++j) {
      CHECK(std::abs(got(0, static_cast<std::size_t>(j))) == 0.0);
      CHECK(std::abs(got(static_cast<std::size_t>(j), 0)) == 0.0);
    }
  }
  SUBCASE("agreement with the direct matrix Cayley on the assembled X") {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 3 + static_cast<std::size_t>(t % 3);
      const cplx w = 0.3 * rng.cnormal();
      std::vector<cplx> pv(n);
      for (auto& x : pv) x = 0.2 * rng.cnormal();
      CMatrix z = rand_cmatrix(rng, n, n) * cplx(0.15);
      // X = [[w, psi^T],[psi, Z - psi psi^T/(1-w)]]
      CMatrix x(n + 1, n + 1);
      x(0, 0) = w;
      for (std::size_t i = 0; i < n; ++i) {
        x(0, 1 + i) = pv[i];
        x(1 + i, 0) = pv[i];
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          x(1 + i, 1 + j) = z(i, j) - pv[i] * pv[j] / (1.0 - w);
      worst = std::max(worst, block_cayley_2x2(w, pv, z).dist_max(matrix_cayley(x)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("phi(X(zeta)) lands in the 17x17 tube pattern") {
  Rng rng(89);
  int used = 0;
  double worst_res = 0.0;
  while (used < 100) {
    std::vector<cplx> zeta(27);
    const double s = rng.uniform(0.03, 0.15);
    for (auto& x : zeta) x = s * rng.cnormal();
    if (in_exceptional_bounded(zeta).margin <= 0.02) continue;
    ++used;
    CMatrix f = matrix_cayley(build_X_zeta(zeta));
    TubePattern p = read_tube_pattern(f);
    worst_res = std::max(worst_res, p.residual);
    CHECK(in_exceptional_tube(f).inside);
  }
  CHECK(worst_res <= 1e-9);
}

TEST_CASE("apply_structure agrees with the dedicated builders") {
  Rng rng(97);
  SUBCASE("diagonal") {
    auto sm = StructureMap::diagonal_zn({1, 1});
    std::vector<cplx> z{cplx(2.0, 1.0), cplx(-3.0)};
    CMatrix m = apply_structure(sm, z);
    CHECK(m.dist_max(CMatrix::diagonal(z)) == 0.0);
  }
  SUBCASE("lorentz") {
    auto sm = StructureMap::lorentz_w(4, 2);
    auto w = rng.cnormal_vec(4);
    CMatrix m = apply_structure(sm, w);
    CHECK(m.dist_max(CMatrix::kron(build_W(w), CMatrix::identity(2))) == 0.0);
  }
  SUBCASE("exceptional") {
    auto w = rng.cnormal_vec(27);
    auto omegas = build_Omega(w);
    for (int s = 1; s <= 3; ++s) {
      auto sm = StructureMap::exceptional_omega(s);
      CHECK(apply_structure(sm, w).dist_max(omegas[static_cast<std::size_t>(s - 1)]) == 0.0);
    }
  }
  SUBCASE("dimension bookkeeping") {
    CHECK(StructureMap::diagonal_zn({2, 3}).dim() == 5);
    CHECK(StructureMap::skew_zj(2, 3).dim() == 12);
    CHECK(StructureMap::skew_zj(2, 1).nvars() == 6);
    StructureMap::Block b1{false, 2, 2}, b2{true, 2, 1};
    auto sm = StructureMap::cartan({b1, b2});
    CHECK(sm.dim() == 6);
    CHECK(sm.nvars() == 7);
  }
}
