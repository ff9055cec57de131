#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "tubestab/mvpoly.hpp"

using namespace tubestab;
using tubestab::testing::detpoly_cofactor;
using tubestab::testing::rand_poly;

namespace {

// naive monomial evaluation, the oracle eval() is checked against
cplx naive_eval(const MultiPoly& p, std::span<const cplx> z) {
  cplx acc = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx t = c;
    for (std::size_t j = 0; j < z.size(); ++j)
      for (int k = 0; k < e[j]; ++k) t *= z[j];
    acc += t;
  }
  return acc;
}

}  // namespace

TEST_CASE("eval basics and naive oracle") {
  MultiPoly one = MultiPoly::constant(2, 1.0);
  std::vector<cplx> z{cplx(3.0, 1.0), cplx(-2.0)};
  CHECK(one.eval(z) == cplx(1.0));

  MultiPoly z1z2 = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  std::vector<cplx> p{cplx(2.0), cplx(0.0, 3.0)};
  CHECK(std::abs(z1z2.eval(p) - cplx(0.0, 6.0)) <= 1e-15);

  Rng rng(3);
  MultiPoly q = rand_poly(rng, 3, 4, 25);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> w = rng.cnormal_vec(3);
    const cplx a = q.eval(w), b = naive_eval(q, w);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("homogeneous parts reconstruct the polynomial") {
  MultiPoly p(2);
  p.add_term({0, 0}, 1.0);
  p.add_term({1, 0}, 1.0);
  p.add_term({1, 1}, 1.0);
  CHECK(p.homogeneous_part(2).coeff({1, 1}) == cplx(1.0));
  CHECK(p.homogeneous_part(2).term_count() == 1);
  CHECK(p.homogeneous_part(0).coeff({0, 0}) == cplx(1.0));

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    MultiPoly q = rand_poly(rng, 2, 5, 12);
    MultiPoly acc(2);
    for (int i = 0; i <= q.total_degree(); ++i) acc += q.homogeneous_part(i);
    acc -= q;
    CHECK(acc.coeff_scale() <= 1e-14 * q.coeff_scale());
  }
}

TEST_CASE("homogenize") {
  MultiPoly p(1);
  p.add_term({1}, 1.0);
  p.add_term({0}, 1.0);  // z + 1
  MultiPoly h = p.homogenize();
  CHECK(h.coeff({1, 0}) == cplx(1.0));  // mu0
  CHECK(h.coeff({0, 1}) == cplx(1.0));  // z

  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    MultiPoly q = rand_poly(rng, 2, 4, 10);
    MultiPoly hh = q.homogenize();
    // P(0, z) = top homogeneous part
    MultiPoly top = q.homogeneous_part(q.total_degree());
    std::vector<cplx> z = rng.cnormal_vec(2);
    std::vector<cplx> z0{cplx(0.0), z[0], z[1]};
    CHECK(std::abs(hh.eval(z0) - top.eval(z)) <= 1e-11 * (1.0 + std::abs(top.eval(z))));
    // dehomogenize round trip
    MultiPoly back = hh.dehomogenize() - q;
    CHECK(back.coeff_scale() <= 1e-14 * q.coeff_scale());
  }
}

TEST_CASE("real/imag split") {
  MultiPoly p(1);
  p.add_term({1}, cplx(1.0, 2.0));
  auto [r, q] = p.real_imag_split();
  CHECK(r.coeff({1}) == cplx(1.0));
  CHECK(q.coeff({1}) == cplx(2.0));

  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    MultiPoly f = rand_poly(rng, 2, 4, 9);
    auto [rr, qq] = f.real_imag_split();
    CHECK(rr.max_imag_coeff() == 0.0);
    CHECK(qq.max_imag_coeff() == 0.0);
    MultiPoly back = rr + qq.scaled(cplx(0.0, 1.0)) - f;
    CHECK(back.coeff_scale() == 0.0);
  }
}

TEST_CASE("line restriction") {
  MultiPoly z1 = MultiPoly::variable(2, 0);
  std::vector<double> x{1.0, 0.0}, y{0.0, 1.0};
  MultiPoly c = z1.line_restrict(x, y);
  CHECK(c.total_degree() == 0);
  CHECK(c.coeff({0}) == cplx(1.0));

  MultiPoly z1z2 = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  std::vector<double> x0{0.0, 0.0}, y1{1.0, 1.0};
  MultiPoly t2 = z1z2.line_restrict(x0, y1);
  CHECK(t2.coeff({2}) == cplx(1.0));
  CHECK(t2.term_count() == 1);

  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    MultiPoly f = rand_poly(rng, 3, 3, 14);
    std::vector<double> xv{rng.normal(), rng.normal(), rng.normal()};
    std::vector<double> yv{rng.normal(), rng.normal(), rng.normal()};
    MultiPoly g = f.line_restrict(xv, yv);
    for (int s = 0; s < 20; ++s) {
      const cplx t0 = rng.cnormal();
      std::vector<cplx> z(3);
      for (int j = 0; j < 3; ++j) z[j] = xv[j] + t0 * yv[j];
      const cplx a = f.eval(z);
      const cplx b = g.eval(std::vector<cplx>{t0});
      CHECK(std::abs(a - b) <= 1e-11 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("homogeneous line scaling p_n(ty) = t^n p_n(y)") {
  Rng rng(11);
  MultiPoly f = rand_poly(rng, 2, 4, 10);
  MultiPoly pn = f.homogeneous_part(f.total_degree());
  if (pn.is_zero()) return;
  std::vector<double> x0{0.0, 0.0}, y{0.7, -0.4};
  MultiPoly g = pn.line_restrict(x0, y);
  const int n = pn.total_degree();
  for (const auto& [e, c] : g.terms()) CHECK(e[0] == n);
  std::vector<cplx> yc{cplx(y[0]), cplx(y[1])};
  CHECK(std::abs(g.coeff({n}) - pn.eval(yc)) <= 1e-12 * (1.0 + std::abs(pn.eval(yc))));
}

TEST_CASE("mobius substitution") {
  SUBCASE("constants pass through") {
    MultiPoly one = MultiPoly::constant(1, 1.0);
    MultiPoly m = one.mobius_substitute({0}, MultiPoly::Mobius::disc_to_halfplane);
    CHECK(m.coeff({0}) == cplx(1.0));
    CHECK(m.term_count() == 1);
  }
  SUBCASE("p = z maps to i(1+z)") {
    MultiPoly z = MultiPoly::variable(1, 0);
    MultiPoly m = z.mobius_substitute({1}, MultiPoly::Mobius::disc_to_halfplane);
    CHECK(std::abs(m.coeff({0}) - cplx(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(m.coeff({1}) - cplx(0.0, 1.0)) <= 1e-15);
  }
  SUBCASE("double substitution is (2i)^{sum n_j} times the identity") {
    Rng rng(13);
    MultiPoly f = rand_poly(rng, 2, 3, 8);
    const auto deg = f.multidegree();
    MultiPoly td = f.mobius_substitute(deg.per_var, MultiPoly::Mobius::disc_to_halfplane);
    MultiPoly back = td.mobius_substitute(deg.per_var, MultiPoly::Mobius::halfplane_to_disc);
    const int total = deg.per_var[0] + deg.per_var[1];
    cplx factor = 1.0;
    for (int i = 0; i < total; ++i) factor *= cplx(0.0, 2.0);
    MultiPoly diff = back - f.scaled(factor);
    CHECK(diff.coeff_scale() <= 1e-11 * back.coeff_scale());
    CHECK(std::abs(std::abs(factor) - std::pow(2.0, total)) <= 1e-12);
  }
  SUBCASE("undersized degree bound is rejected") {
    MultiPoly z = MultiPoly::variable(1, 0);
    MultiPoly z2 = z * z;
    CHECK_THROWS_AS((void)z2.mobius_substitute({1}, MultiPoly::Mobius::disc_to_halfplane),
                    Error);
  }
}

TEST_CASE("interpolation from tensor grids") {
  SUBCASE("constant grid") {
    std::vector<std::vector<double>> nodes{chebyshev_nodes(1)};
    std::vector<cplx> vals{cplx(4.0, -1.0)};
    MultiPoly p = interpolate_from_grid(nodes, vals);
    CHECK(p.coeff({0}) == cplx(4.0, -1.0));
  }
  SUBCASE("z1^2 + z2 on a 3x2 grid") {
    std::vector<std::vector<double>> nodes{chebyshev_nodes(3), chebyshev_nodes(2)};
    MultiPoly f(2);
    f.add_term({2, 0}, 1.0);
    f.add_term({0, 1}, 1.0);
    auto vals = evaluate_on_grid(nodes, [&](std::span<const cplx> z) { return f.eval(z); });
    MultiPoly g = interpolate_from_grid(nodes, vals);
    MultiPoly diff = g - f;
    CHECK(diff.coeff_scale() <= 1e-12);
  }
  SUBCASE("interpolate-evaluate round trip on random polynomials") {
    Rng rng(15);
    for (int t = 0; t < 10; ++t) {
      MultiPoly f = rand_poly(rng, 2, 4, 12);
      const auto d = f.multidegree();
      std::vector<std::vector<double>> nodes{chebyshev_nodes(d.per_var[0] + 1),
                                             chebyshev_nodes(d.per_var[1] + 1)};
      auto vals = evaluate_on_grid(nodes, [&](std::span<const cplx> z) { return f.eval(z); });
      MultiPoly g = interpolate_from_grid(nodes, vals);
      MultiPoly diff = g - f;
      CHECK(diff.coeff_scale() <= 1e-9 * (1.0 + f.coeff_scale()));
    }
  }
  SUBCASE("duplicate nodes rejected") {
    std::vector<std::vector<double>> nodes{{0.5, 0.5}};
    std::vector<cplx> vals{1.0, 2.0};
    CHECK_THROWS_AS((void)interpolate_from_grid(nodes, vals), Error);
  }
}

TEST_CASE("det(I - K Z_N) interpolation matches cofactor expansion") {
  Rng rng(16);
  const std::vector<int> mults{2, 1, 2};  // |N| = 5
  CMatrix k = tubestab::testing::rand_contraction(rng, 5, 0.8);
  const auto entries = tubestab::testing::disc_pencil_entries(k, mults);
  MultiPoly oracle = detpoly_cofactor(entries);

  std::vector<std::vector<double>> nodes;
  for (int m : mults) nodes.push_back(chebyshev_nodes(m + 1));
  auto vals = evaluate_on_grid(nodes, [&](std::span<const cplx> z) {
    std::vector<cplx> diag;
    for (std::size_t j = 0; j < mults.size(); ++j)
      diag.insert(diag.end(), static_cast<std::size_t>(mults[j]), z[j]);
    CMatrix pencil = CMatrix::identity(5) - k * CMatrix::diagonal(diag);
    return determinant(pencil);
  });
  MultiPoly got = interpolate_from_grid(nodes, vals);
  MultiPoly diff = got - oracle;
  CHECK(diff.coeff_scale() <= 1e-9);
}

TEST_CASE("product is commutative and associative") {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    MultiPoly a = rand_poly(rng, 2, 3, 6), b = rand_poly(rng, 2, 3, 6),
              c = rand_poly(rng, 2, 3, 6);
    MultiPoly comm = a * b - b * a;
    CHECK(comm.coeff_scale() <= 1e-12 * (a * b).coeff_scale());
    MultiPoly assoc = (a * b) * c - a * (b * c);
    CHECK(assoc.coeff_scale() <= 1e-12 * ((a * b) * c).coeff_scale());
  }
}
