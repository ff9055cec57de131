#include "tubestab/suites.hpp"

#include <chrono>
#include <cmath>

namespace tubestab {

namespace {

constexpr cplx kI(0.0, 1.0);

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void finish(SuiteResult& r, const Timer& t) {
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  r.wall_ms = t.ms();
}

CMatrix rand_cmatrix(Rng& rng, std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.cnormal();
  return m;
}

CMatrix rand_contraction(Rng& rng, std::size_t n, double norm) {
  CMatrix g = rand_cmatrix(rng, n);
  const double s = op_norm(g);
  return g * cplx(norm / (s > 0 ? s : 1.0));
}

std::vector<std::vector<cplx>> domain_points(DomainSpec::Kind kind, int dim, std::size_t count,
                                             std::uint64_t seed, Exec exec) {
  DomainSpec spec;
  spec.kind = kind;
  spec.dim = dim;
  SampleOptions opt;
  opt.exec = exec;
  return sample(spec, count, seed, SampleRegion::interior, opt);
}

}  // namespace

SuiteResult run_suite_clifford(const SuiteConfig& cfg) {
  Timer timer;
  SuiteResult r;
  r.name = "clifford";

  const auto& t = generators_T();
  double rel_worst = 0.0;
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j) {
      const auto& tk = t[static_cast<std::size_t>(k)];
      const auto& tj = t[static_cast<std::size_t>(j)];
      const CMatrix lhs = tk.transpose() * tj + tj.transpose() * tk;
      const CMatrix expect = (j == k) ? CMatrix::identity(8) * cplx(2.0) : CMatrix(8, 8);
      rel_worst = std::max(rel_worst, lhs.dist_max(expect));
    }
  r.checks.push_back({"clifford_relations_exact", rel_worst == 0.0, rel_worst, 0.0, 64});

  const Rng root(cfg.seed);
  const std::size_t n = cfg.roundtrip_samples;
  const double yw = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i);
    const auto w = rng.cnormal_vec(8);
    cplx s = 0.0;
    for (const auto& x : w) s += x * x;
    const CMatrix y = build_Y(w);
    const CMatrix expect = CMatrix::identity(8) * s;
    return std::max((y.transpose() * y).dist_max(expect), (y * y.transpose()).dist_max(expect)) /
           std::max(1.0, std::abs(s));
  });
  r.checks.push_back({"Y_quadratic_identity", yw <= 1e-12, yw, 1e-12, n});

  const double sw = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i + n);
    const auto y = rng.cnormal_vec(8);
    const auto z = rng.cnormal_vec(8);
    const auto lhs = build_Y(z).apply(y);
    const auto rhs = (t[0] * build_Y(y)).apply(z);
    double worst = 0.0;
    for (std::size_t q = 0; q < 8; ++q) worst = std::max(worst, std::abs(lhs[q] - rhs[q]));
    return worst;
  });
  r.checks.push_back({"switch_identity", sw <= 1e-12, sw, 1e-12, n});

  finish(r, timer);
  return r;
}

SuiteResult run_suite_t27(const SuiteConfig& cfg) {
  Timer timer;
  SuiteResult r;
  r.name = "t27";
  const Rng root(cfg.seed);
  const std::size_t n = cfg.t27_samples;

  // triple PD equivalence outside the 1e-8 eigenvalue band
  const std::size_t disagreements = batch_count(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i);
    std::vector<cplx> w(27);
    const double vs = rng.uniform(0.05, 0.6);
    for (auto& x : w) x = {rng.normal(), vs * rng.normal()};
    w[0] = {w[0].real(), rng.uniform(0.0, 1.5)};
    w[17] = {w[17].real(), rng.uniform(0.0, 1.5)};
    w[26] = {w[26].real(), rng.uniform(0.0, 1.5)};
    const auto omegas = build_Omega(w);
    double m[3];
    for (int s = 0; s < 3; ++s) m[s] = min_eig_herm(imag_part(omegas[static_cast<std::size_t>(s)]));
    if (std::min({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])}) < 1e-8) return false;
    return !((m[0] > 0) == (m[1] > 0) && (m[1] > 0) == (m[2] > 0));
  });
  r.checks.push_back({"triple_pd_equivalence_disagreements", disagreements == 0,
                      static_cast<double>(disagreements), 0.0, n});

  // determinant factorization det(I - X(zeta)) = (1-w1)((1-w2)(1-w3) - z^T z)^8
  const double detfact = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i + 7 * n);
    std::vector<cplx> zeta(27);
    for (auto& x : zeta) x = 0.3 * rng.cnormal();
    const cplx w1 = zeta[0], w2 = zeta[17], w3 = zeta[26];
    cplx ztz = 0.0;
    for (int j = 0; j < 8; ++j) ztz += zeta[18 + j] * zeta[18 + j];
    const cplx lhs = determinant(CMatrix::identity(17) - build_X_zeta(zeta));
    cplx rhs = 1.0 - w1;
    const cplx base = (1.0 - w2) * (1.0 - w3) - ztz;
    for (int q = 0; q < 8; ++q) rhs *= base;
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  });
  r.checks.push_back({"det_factorization", detfact <= 1e-9, detfact, 1e-9, n});

  // block Cayley closed form vs direct matrix Cayley
  const double blk = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i + 11 * n);
    const std::size_t dim = 3 + (i % 4);
    const cplx w = 0.3 * rng.cnormal();
    std::vector<cplx> pv(dim);
    for (auto& x : pv) x = 0.2 * rng.cnormal();
    CMatrix z = rand_cmatrix(rng, dim) * cplx(0.15);
    CMatrix x(dim + 1, dim + 1);
    x(0, 0) = w;
    for (std::size_t q = 0; q < dim; ++q) {
      x(0, 1 + q) = pv[q];
      x(1 + q, 0) = pv[q];
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        x(1 + a, 1 + b) = z(a, b) - pv[a] * pv[b] / (1.0 - w);
    return block_cayley_2x2(w, pv, z).dist_max(matrix_cayley(x));
  });
  r.checks.push_back({"block_cayley_closed_form", blk <= 1e-10, blk, 1e-10, n});

  // phi(X(zeta)) lands in the 17x17 tube pattern and inside the tube
  DomainSpec bounded;
  bounded.kind = DomainSpec::Kind::bounded_exceptional27;
  SampleOptions sopt;
  sopt.exec = cfg.exec;
  const auto zetas = sample(bounded, n, cfg.seed ^ 0x2727u, SampleRegion::interior, sopt);
  std::vector<double> residuals(n, 0.0);
  const std::size_t outside = batch_count(n, cfg.exec, [&](std::size_t i) {
    const CMatrix f = matrix_cayley(build_X_zeta(zetas[i]));
    residuals[i] = read_tube_pattern(f).residual;
    return !in_exceptional_tube(f).inside;
  });
  double worst_res = 0.0;
  for (double v : residuals) worst_res = std::max(worst_res, v);
  r.checks.push_back({"cayley_image_pattern_residual", worst_res <= 1e-9, worst_res, 1e-9, n});
  r.checks.push_back(
      {"cayley_image_tube_membership_failures", outside == 0, static_cast<double>(outside), 0.0, n});

  finish(r, timer);
  return r;
}

SuiteResult run_suite_lieball(const SuiteConfig& cfg) {
  Timer timer;
  SuiteResult r;
  r.name = "lieball";
  const Rng root(cfg.seed);
  for (int n = 2; n <= 6; ++n) {
    const std::size_t count = cfg.lieball_samples;
    const std::size_t disagreements = batch_count(count, cfg.exec, [&](std::size_t i) {
      Rng rng = root.split(static_cast<std::uint64_t>(n) * 1000003ull + i);
      std::vector<cplx> z(static_cast<std::size_t>(n));
      const double s = rng.uniform(0.1, 0.8) / std::sqrt(static_cast<double>(n));
      for (auto& x : z) x = s * rng.cnormal();
      const auto r0 = in_lie_ball(z, LieBallMethod::eig_formula);
      if (std::abs(r0.margin) < 1e-6 || std::abs(1.0 - z[0]) < 1e-6) return false;
      const bool v0 = r0.inside;
      const bool v1 = in_lie_ball(z, LieBallMethod::M_matrix).inside;
      const bool v2 = in_lie_ball(z, LieBallMethod::Q_contraction).inside;
      const bool v3 = in_lie_ball(z, LieBallMethod::Ppm_pencil).inside;
      bool bad = !(v0 == v1 && v1 == v2 && v2 == v3);
      if (n == 2 && !bad) bad = v0 != (op_norm(build_P2(z[0], z[1])) < 1.0);
      return bad;
    });
    r.checks.push_back({"four_way_agreement_n" + std::to_string(n), disagreements == 0,
                        static_cast<double>(disagreements), 0.0, count});
  }
  finish(r, timer);
  return r;
}

SuiteResult run_suite_roundtrips(const SuiteConfig& cfg) {
  Timer timer;
  SuiteResult r;
  r.name = "roundtrips";
  const Rng root(cfg.seed);
  const std::size_t n = cfg.roundtrip_samples;

  const double phi_rt = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i);
    const cplx z = 0.95 * rng.unit_disc();
    return std::abs(phi_inv(phi(z)) - z);
  });
  r.checks.push_back({"phi_round_trip", phi_rt <= 1e-10, phi_rt, 1e-10, n});

  const double mc_rt = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i + n);
    CMatrix k = rand_contraction(rng, 3 + (i % 3), 0.9);
    return matrix_cayley_inv(matrix_cayley(k)).dist_max(k);
  });
  r.checks.push_back({"matrix_cayley_round_trip", mc_rt <= 1e-10, mc_rt, 1e-10, n});

  const double psi_rt = batch_max(n, cfg.exec, [&](std::size_t i) {
    Rng rng = root.split(i + 2 * n);
    const std::size_t half = 2 + (i % 2);
    CMatrix g = rand_cmatrix(rng, 2 * half);
    CMatrix z = (g - g.transpose()) * cplx(0.5);
    const double s = op_norm(z);
    if (s > 0) z *= cplx(0.9 / s);
    return psi_inv(psi(z)).dist_max(z);
  });
  r.checks.push_back({"psi_round_trip", psi_rt <= 1e-10, psi_rt, 1e-10, n});

  double phin_rt = 0.0, phin_jordan = 0.0, phi2_link = 0.0;
  for (int dim = 2; dim <= 6; ++dim) {
    const auto pts = domain_points(DomainSpec::Kind::lie_ball, dim, n / 5 + 1,
                                   cfg.seed ^ static_cast<std::uint64_t>(dim), cfg.exec);
    for (const auto& z : pts) {
      const auto back = Phi_n_inv(Phi_n(z));
      for (std::size_t q = 0; q < z.size(); ++q)
        phin_rt = std::max(phin_rt, std::abs(back[q] - z[q]));
      const auto direct = Phi_n(z);
      const auto jordan = Phi_n_jordan_form(z);
      for (std::size_t q = 0; q < z.size(); ++q)
        phin_jordan = std::max(phin_jordan, std::abs(direct[q] - jordan[q]));
      if (dim == 2) {
        const auto link = Phi_2_pencil_link(z[0], z[1]);
        phi2_link = std::max(phi2_link, link.consistency);
      }
    }
  }
  r.checks.push_back({"Phi_n_round_trip", phin_rt <= 1e-10, phin_rt, 1e-10, n});
  r.checks.push_back({"Phi_n_jordan_cayley_form", phin_jordan <= 1e-10, phin_jordan, 1e-10, n});
  r.checks.push_back({"Phi_2_pencil_link", phi2_link <= 1e-10, phi2_link, 1e-10, n / 5 + 1});

  // nonassociativity witness, exact
  {
    JordanVector f2(4, 0.0), f3(4, 0.0);
    f2[1] = 1.0;
    f3[2] = 1.0;
    const auto lhs = jordan_mul(jordan_mul(f3, f2), f2);
    const auto rhs = jordan_mul(f3, jordan_mul(f2, f2));
    double lz = 0.0, rd = 0.0;
    for (std::size_t q = 0; q < 4; ++q) {
      lz = std::max(lz, std::abs(lhs[q]));
      rd = std::max(rd, std::abs(rhs[q] - f3[q]));
    }
    r.checks.push_back({"nonassociativity_witness", lz == 0.0 && rd == 0.0, lz + rd, 0.0, 1});
  }

  // double Mobius substitution returns (2i)^{sum n_j} p
  {
    Rng rng = root.split(99);
    MultiPoly p(2);
    for (int t = 0; t < 8; ++t)
      p.add_term({static_cast<int>(rng.uniform(0.0, 3.999)),
                  static_cast<int>(rng.uniform(0.0, 3.999))},
                 rng.cnormal());
    const auto deg = p.multidegree();
    MultiPoly td = p.mobius_substitute(deg.per_var, MultiPoly::Mobius::disc_to_halfplane);
    MultiPoly back = td.mobius_substitute(deg.per_var, MultiPoly::Mobius::halfplane_to_disc);
    cplx factor = 1.0;
    for (int q = 0; q < deg.per_var[0] + deg.per_var[1]; ++q) factor *= 2.0 * kI;
    const double err = (back - p.scaled(factor)).coeff_scale() / back.coeff_scale();
    r.checks.push_back({"mobius_double_substitution", err <= 1e-10, err, 1e-10, 1});
  }

  finish(r, timer);
  return r;
}

SuiteResult run_suite_proofchains(const SuiteConfig& cfg) {
  Timer timer;
  SuiteResult r;
  r.name = "proofchains";
  Rng rng(cfg.seed ^ 0xc4a1ull);
  const std::size_t pts = cfg.chain_points;

  {
    const CMatrix k = rand_contraction(rng, 5, 0.85);
    const auto w = domain_points(DomainSpec::Kind::halfplane_tube, 2, pts, cfg.seed + 1, cfg.exec);
    const double err = halfplane_chain_err(k, {3, 2}, w);
    r.checks.push_back({"halfplane_ff_chain", err <= 1e-8, err, 1e-8, pts});
  }
  {
    const CMatrix k = rand_contraction(rng, 4, 0.85);
    const auto w = domain_points(DomainSpec::Kind::lorentz_tube, 2, pts, cfg.seed + 2, cfg.exec);
    const double err = lorentz2_chain_err(k, w);
    r.checks.push_back({"lorentz2_chain", err <= 1e-8, err, 1e-8, pts});
  }
  {
    const CMatrix k = rand_contraction(rng, 6, 0.85);
    const auto w = domain_points(DomainSpec::Kind::lorentz_tube, 3, pts, cfg.seed + 3, cfg.exec);
    const double err = lorentzn_chain_err(k, 3, 2, w);
    r.checks.push_back({"lorentzn_ff2_chain_strict", err <= 1e-8, err, 1e-8, pts});
  }
  {
    // planted eigenvalue-1 block exercises the split bookkeeping
    CMatrix kt = rand_contraction(rng, 3, 0.8);
    CMatrix k(4, 4);
    k(0, 0) = 1.0;
    k.set_block(1, 1, kt);
    const auto w = domain_points(DomainSpec::Kind::lorentz_tube, 2, pts, cfg.seed + 4, cfg.exec);
    const double err = lorentzn_chain_err(k, 2, 2, w);
    r.checks.push_back({"lorentzn_ff2_chain_split", err <= 1e-8, err, 1e-8, pts});
  }
  {
    const CMatrix k = rand_contraction(rng, 4, 0.85);
    const auto w = domain_points(DomainSpec::Kind::skew_domain, 2, pts / 2 + 1, cfg.seed + 5,
                                 cfg.exec);
    const double err = skew_chain_err(k, 2, 1, w);
    r.checks.push_back({"skew_chain", err <= 1e-8, err, 1e-8, pts / 2 + 1});
  }
  {
    std::vector<StructureMap::Block> blocks{{false, 2, 1}, {true, 2, 1}};
    const CMatrix k = rand_contraction(rng, StructureMap::cartan(blocks).dim(), 0.8);
    DomainSpec cp;
    cp.kind = DomainSpec::Kind::cartan_product;
    cp.factors = blocks;
    SampleOptions so;
    so.exec = cfg.exec;
    const auto w = sample(cp, pts / 2 + 1, cfg.seed + 6, SampleRegion::interior, so);
    const double err = cartan_chain_err(k, blocks, w);
    r.checks.push_back({"cartan_chain", err <= 1e-8, err, 1e-8, pts / 2 + 1});
  }

  finish(r, timer);
  return r;
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteConfig& cfg) {
  std::vector<SuiteResult> out;
  if (name == "clifford" || name == "all") out.push_back(run_suite_clifford(cfg));
  if (name == "t27" || name == "all") out.push_back(run_suite_t27(cfg));
  if (name == "lieball" || name == "all") out.push_back(run_suite_lieball(cfg));
  if (name == "roundtrips" || name == "all") out.push_back(run_suite_roundtrips(cfg));
  if (name == "proofchains" || name == "all") out.push_back(run_suite_proofchains(cfg));
  if (out.empty()) fail(errc::unknown_suite, "unknown suite: " + name);
  return out;
}

}  // namespace tubestab
