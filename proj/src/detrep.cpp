#include "tubestab/detrep.hpp"

#include <algorithm>
#include <cmath>

namespace tubestab {

namespace {

constexpr cplx kI(0.0, 1.0);

void require_strict_contraction(double nrm, const char* who) {
  require(nrm < 1.0, errc::not_contraction, std::string(who) + ": ||K|| must be < 1");
}

cplx ipow(cplx base, int e) {
  cplx acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

bool grid_fits(const DetRep& rep, std::size_t budget) {
  std::size_t grid = 1;
  for (int d : extraction_degrees(rep)) {
    grid *= static_cast<std::size_t>(d + 1);
    if (grid > budget) return false;
  }
  return true;
}

}  // namespace

std::size_t DetRep::pencil_dim() const {
  if (form == Form::affine && isometry) return isometry->cols();
  return structure.dim();
}

CMatrix pencil_at(const DetRep& rep, std::span<const cplx> z, const NumTol& tol) {
  switch (rep.form) {
    case DetRep::Form::affine: {
      const CMatrix l = apply_structure(rep.structure, z, tol);
      if (rep.isometry) {
        const CMatrix& v = *rep.isometry;
        return rep.a0 + v.adjoint() * l * v;
      }
      return rep.a0 + l;
    }
    case DetRep::Form::disc_contraction:
      return CMatrix::identity(rep.structure.dim()) -
             rep.a0 * apply_structure(rep.structure, z, tol);
    case DetRep::Form::lie_pencil: {
      const auto [pp, pm] = build_Ppm(z);
      const CMatrix ik = CMatrix::identity(static_cast<std::size_t>(rep.structure.mult));
      return CMatrix::kron(pp, ik) - rep.a0 * CMatrix::kron(pm, ik);
    }
  }
  fail(errc::schema_error, "unknown representation form");
}

cplx rep_value_at(const DetRep& rep, std::span<const cplx> z, const NumTol& tol) {
  cplx v = rep.prefactor.c * determinant(pencil_at(rep, z, tol));
  if (rep.prefactor.w1_plus_i_pow) v *= ipow(z[0] + kI, rep.prefactor.w1_plus_i_pow);
  return v;
}

std::vector<int> extraction_degrees(const DetRep& rep) {
  const StructureMap& sm = rep.structure;
  std::vector<int> deg;
  switch (sm.kind) {
    case StructureMap::Kind::diagonal_zn:
      deg = sm.multiplicities;
      break;
    case StructureMap::Kind::cartan_blocks:
      for (const auto& b : sm.blocks) {
        if (b.symmetric) {
          for (int i = 0; i < b.size; ++i)
            for (int j = i; j < b.size; ++j) deg.push_back(i == j ? b.mult : 2 * b.mult);
        } else {
          for (int v = 0; v < b.size * b.size; ++v) deg.push_back(b.mult);
        }
      }
      break;
    case StructureMap::Kind::skew_zj:
      deg.assign(sm.nvars(), 2 * sm.mult);
      break;
    case StructureMap::Kind::lorentz_w: {
      const int m = static_cast<int>(rep.pencil_dim());
      deg.assign(sm.nvars(), std::min(2 * sm.mult, m));
      deg[0] = m;
      break;
    }
    case StructureMap::Kind::lie_ppm:
      deg.assign(sm.nvars(), 2 * sm.n * sm.mult);
      break;
    case StructureMap::Kind::exceptional_omega:
      deg.assign(sm.nvars(), static_cast<int>(rep.pencil_dim()));
      break;
  }
  return deg;
}

MultiPoly extract_polynomial(const DetRep& rep, std::size_t grid_budget, Exec exec) {
  const auto deg = extraction_degrees(rep);
  std::vector<std::vector<double>> nodes;
  std::size_t total = 1;
  for (int d : deg) {
    nodes.push_back(chebyshev_nodes(d + 1));
    total *= static_cast<std::size_t>(d + 1);
    require(total <= grid_budget, errc::degree_too_small,
            "extraction grid exceeds the evaluation budget");
  }
  const NumTol tol;
  auto vals = evaluate_on_grid(
      nodes, [&](std::span<const cplx> z) { return determinant(pencil_at(rep, z, tol)); }, exec);
  MultiPoly det_poly = interpolate_from_grid(nodes, vals);
  // det total degree is capped by the per-row degree of the pencil; tensor
  // slots above it hold pure interpolation noise
  const int row_deg = rep.form == DetRep::Form::lie_pencil ? 2 : 1;
  const int cap = row_deg * static_cast<int>(rep.pencil_dim());
  MultiPoly truncated(det_poly.nvars());
  for (int i = 0; i <= cap; ++i) truncated += det_poly.homogeneous_part(i);
  det_poly = std::move(truncated);
  MultiPoly out = det_poly.scaled(rep.prefactor.c);
  if (rep.prefactor.w1_plus_i_pow) {
    MultiPoly shift(det_poly.nvars());
    MultiPoly::Expo e0(det_poly.nvars(), 0), e1(det_poly.nvars(), 0);
    e1[0] = 1;
    shift.add_term(e0, kI);
    shift.add_term(e1, 1.0);
    for (int i = 0; i < rep.prefactor.w1_plus_i_pow; ++i) out = out * shift;
  }
  out.prune();
  return out;
}

BuiltRep polydisk_rep_from_contraction(const CMatrix& k, const std::vector<int>& mults) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "polydisk_rep_from_contraction");
  StructureMap sm = StructureMap::diagonal_zn(mults);
  require(k.square() && k.rows() == sm.dim(), errc::dim_mismatch,
          "contraction size must equal |N|");
  BuiltRep b;
  b.rep.form = DetRep::Form::disc_contraction;
  b.rep.a0 = k;
  b.rep.structure = std::move(sm);
  b.rep.k = 1;
  b.rep.construction = "polydisk_disc";
  b.rep.source_norm = nrm;
  b.poly = extract_polynomial(b.rep);
  b.extracted = true;
  return b;
}

BuiltRep cayley_push_halfplane(const CMatrix& k, const std::vector<int>& mults) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "cayley_push_halfplane");
  StructureMap sm = StructureMap::diagonal_zn(mults);
  require(k.square() && k.rows() == sm.dim(), errc::dim_mismatch,
          "contraction size must equal |N|");
  const std::size_t d = k.rows();
  const CMatrix id = CMatrix::identity(d);
  BuiltRep b;
  b.rep.form = DetRep::Form::affine;
  b.rep.a0 = matrix_cayley(k);
  b.rep.structure = std::move(sm);
  b.rep.k = 1;
  b.rep.construction = "halfplane_push";
  b.rep.source_norm = nrm;

  // Im A0 against the factored form (I-K*)^{-1}(I-K*K)(I-K)^{-1}
  const CMatrix factored =
      inverse(id - k.adjoint()) * (id - k.adjoint() * k) * inverse(id - k);
  b.a0_im_formula_err = imag_part(b.rep.a0).dist_max(factored);
  b.a0_im_min_eig = min_eig_herm(imag_part(b.rep.a0));
  b.poly = extract_polynomial(b.rep);
  b.extracted = true;
  return b;
}

BuiltRep lorentz2_rep_from_contraction(const CMatrix& k) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "lorentz2_rep_from_contraction");
  require(k.square() && k.rows() % 2 == 0 && k.rows() >= 2, errc::dim_mismatch,
          "K must be 2k x 2k");
  const std::size_t dim = k.rows();
  const CMatrix id = CMatrix::identity(dim);
  CMatrix plus_inv;
  try {
    plus_inv = inverse(id + k);
  } catch (const Error&) {
    fail(errc::singular_pencil, "I + K not invertible");
  }
  BuiltRep b;
  b.rep.form = DetRep::Form::affine;
  b.rep.a0 = kI * (id - k) * plus_inv;
  b.rep.structure = StructureMap::lorentz_w(2, static_cast<int>(dim / 2));
  b.rep.k = static_cast<int>(dim / 2);
  b.rep.prefactor.c = determinant(id + k);
  b.rep.construction = "lorentz2";
  b.rep.source_norm = nrm;
  b.a0_im_min_eig = min_eig_herm(imag_part(b.rep.a0));
  b.poly = extract_polynomial(b.rep);
  b.extracted = true;
  return b;
}

EigenoneSplit split_eigenspace_at_one(const CMatrix& k, double cluster_tol) {
  require(k.square(), errc::dim_mismatch, "split needs a square matrix");
  const std::size_t n = k.rows();
  const CMatrix gap = CMatrix::identity(n) - k;
  const auto eig = herm_eigs(gap.adjoint() * gap);  // sigma^2 of I-K, ascending
  std::size_t cluster = 0;
  while (cluster < n && eig.eigenvalues[cluster] < cluster_tol * cluster_tol) ++cluster;

  EigenoneSplit s;
  s.cluster_dim = cluster;
  if (cluster == 0) {
    // strict case: keep the identity basis so block tests stay exact
    s.v = CMatrix::identity(n);
    s.k_tilde = k;
    return s;
  }
  const double scale = std::max(op_norm(k), 1e-300);
  // the cluster must be reducing: (K-I)v ~ 0 and (K*-I)v ~ 0
  for (std::size_t j = 0; j < cluster; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, j);
    const auto kv = k.apply(v);
    const auto ksv = k.adjoint().apply(v);
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r1 += std::norm(kv[i] - v[i]);
      r2 += std::norm(ksv[i] - v[i]);
    }
    require(std::sqrt(r1) <= 1e-8 * scale && std::sqrt(r2) <= 1e-8 * scale, errc::split_failure,
            "eigenvalue-1 cluster is not numerically reducing");
  }
  const std::size_t m = n - cluster;
  s.v = CMatrix(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) s.v(i, j) = eig.vectors(i, cluster + j);
  s.k_tilde = s.v.adjoint() * k * s.v;
  if (m > 0)
    require(op_norm(CMatrix::identity(m) - s.k_tilde) > 1e-10, errc::split_failure,
            "I - Ktilde numerically singular after split");
  return s;
}

BuiltRep lorentzn_rep_from_contraction(const CMatrix& k, int n, int kk) {
  const double nrm = op_norm(k);
  require(nrm <= 1.0 + 1e-12, errc::not_contraction, "||K|| must be <= 1");
  const std::size_t nk = static_cast<std::size_t>(n) * static_cast<std::size_t>(kk);
  require(k.square() && k.rows() == nk, errc::dim_mismatch, "K must be nk x nk");

  const EigenoneSplit split = split_eigenspace_at_one(k);
  const std::size_t m = split.k_tilde.rows();
  const CMatrix idm = CMatrix::identity(m);
  CMatrix minus_inv;
  if (m > 0) {
    try {
      minus_inv = inverse(idm - split.k_tilde);
    } catch (const Error&) {
      fail(errc::split_failure, "I - Ktilde not invertible");
    }
  }

  BuiltRep b;
  b.rep.form = DetRep::Form::affine;
  b.rep.a0 = (m > 0) ? kI * minus_inv * (idm + split.k_tilde) : CMatrix(0, 0);
  b.rep.structure = StructureMap::lorentz_w(n, kk);
  b.rep.k = kk;
  b.rep.isometry = split.v;
  b.rep.prefactor.c = ipow(2.0 * kI, static_cast<int>(nk - m)) *
                      determinant(idm - split.k_tilde) *
                      ipow(2.0 * kI, (n - 1) * kk);
  b.rep.prefactor.w1_plus_i_pow = kk;
  b.rep.construction = "lorentzn_split";
  b.rep.source_norm = nrm;
  b.a0_im_min_eig = m ? min_eig_herm(imag_part(b.rep.a0)) : 0.0;
  if (m > 0 && grid_fits(b.rep, 300000)) {
    b.poly = extract_polynomial(b.rep);
    b.extracted = true;
  } else {
    b.poly = MultiPoly(b.rep.nvars());
  }
  return b;
}

BuiltRep skew_rep_from_contraction(const CMatrix& k, int n, int mult) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "skew_rep_from_contraction");
  const std::size_t dim = static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(mult);
  require(k.square() && k.rows() == dim, errc::dim_mismatch, "K must be 2nN x 2nN");
  const CMatrix bj = CMatrix::kron(skew_J(static_cast<std::size_t>(n)),
                                   CMatrix::identity(static_cast<std::size_t>(mult)));
  const CMatrix id = CMatrix::identity(dim);
  const CMatrix bk = bj * k;
  CMatrix plus_inv;
  try {
    plus_inv = inverse(id + bk);
  } catch (const Error&) {
    fail(errc::singular_pencil, "I + (J (x) I_N) K not invertible");
  }
  BuiltRep b;
  b.rep.form = DetRep::Form::affine;
  b.rep.a0 = kI * (id - bk) * plus_inv;
  b.rep.structure = StructureMap::skew_zj(n, mult);
  b.rep.k = mult;
  b.rep.prefactor.c = determinant(id + bk);
  b.rep.construction = "skew";
  b.rep.source_norm = nrm;
  b.a0_im_min_eig = min_eig_herm(imag_part(b.rep.a0));
  if (grid_fits(b.rep, 300000)) {
    b.poly = extract_polynomial(b.rep);
    b.extracted = true;
  } else {
    b.poly = MultiPoly(b.rep.nvars());
  }
  return b;
}

BuiltRep lieball_rep_from_contraction(const CMatrix& k, int n, int kk) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "lieball_rep_from_contraction");
  const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(kk);
  require(k.square() && k.rows() == dim, errc::dim_mismatch, "K must be nk x nk");
  BuiltRep b;
  b.rep.form = DetRep::Form::lie_pencil;
  b.rep.a0 = k;
  b.rep.structure = StructureMap::lie_ppm(n, kk);
  b.rep.k = kk;
  b.rep.construction = "lieball_ppm";
  b.rep.source_norm = nrm;
  if (grid_fits(b.rep, 300000)) {
    b.poly = extract_polynomial(b.rep);
    b.extracted = true;
  } else {
    b.poly = MultiPoly(b.rep.nvars());
  }
  return b;
}

RepVerification verify_rep(const MultiPoly& p, const MultiPoly& q, const DetRep& rep,
                           const VerifyOptions& opt) {
  RepVerification rv;
  auto check = [&](std::string name, bool pass, double value) {
    rv.structure_checks.push_back({std::move(name), pass, value});
  };

  const std::size_t d = rep.nvars();
  const bool dims_ok = p.nvars() == d && q.nvars() == d;
  check("variable_count", dims_ok, static_cast<double>(d));
  const NumTol tol;

  if (rep.form == DetRep::Form::affine) {
    rv.a0_im_min_eig = rep.a0.rows() ? min_eig_herm(imag_part(rep.a0)) : 0.0;
    check("im_a0_psd", rv.a0_im_min_eig >= -1e-10, rv.a0_im_min_eig);
    if (rep.structure.kind == StructureMap::Kind::diagonal_zn) {
      // A_j are exact 0/1 diagonal projections adding to the identity
      std::size_t sum = 0;
      for (int m : rep.structure.multiplicities) sum += static_cast<std::size_t>(m);
      check("projections_sum_to_identity", sum == rep.structure.dim() && !rep.isometry,
            static_cast<double>(sum));
    }
  } else {
    const double nrm = op_norm(rep.a0);
    check("contraction_norm", nrm <= 1.0 + 1e-12, nrm);
  }
  if (rep.isometry) {
    const CMatrix& v = *rep.isometry;
    const double err = (v.adjoint() * v).dist_max(CMatrix::identity(v.cols()));
    check("isometry_vstar_v", err <= 1e-12, err);
  }

  if (!dims_ok) {
    rv.verdict = false;
    return rv;
  }

  // sampled identity p q = prefactor * det(pencil) at random points of C^d
  const Rng root(opt.seed);
  std::vector<double> errs(opt.samples, 0.0);
  batch_for(opt.samples, opt.exec, [&](std::size_t i) {
    Rng rng = root.split(i);
    std::vector<cplx> z(d);
    for (auto& x : z) x = {rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
    cplx lhs, rhs;
    double cond = 1.0, eval_scale = 0.0;
    try {
      const CMatrix pen = pencil_at(rep, z, tol);
      rhs = rep.prefactor.c * determinant(pen);
      if (rep.prefactor.w1_plus_i_pow) rhs *= ipow(z[0] + kI, rep.prefactor.w1_plus_i_pow);
      const auto [pv, ps] = p.eval_with_scale(z);
      const auto [qv, qs] = q.eval_with_scale(z);
      lhs = pv * qv;
      eval_scale = ps * std::max(qs, 1e-30);
      try {
        cond = std::max(1.0, pen.norm_inf() * inverse(pen, tol).norm_inf());
      } catch (const Error&) {
        cond = 1e6;  // near-singular pencil sample tolerates more
      }
    } catch (const Error&) {
      errs[i] = std::numeric_limits<double>::infinity();
      return;
    }
    const double scale = std::max({std::abs(rhs), eval_scale, 1e-30});
    errs[i] = std::abs(lhs - rhs) / (scale * cond);
  });
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  rv.identity_max_rel_err = worst;
  rv.samples_used = opt.samples;
  check("sampled_identity", worst <= opt.id_tol, worst);

  if (opt.coefficient_compare && grid_fits(rep, opt.grid_budget)) {
    const MultiPoly target = p * q;
    MultiPoly diff = extract_polynomial(rep, opt.grid_budget, opt.exec) - target;
    const double err = diff.coeff_scale() / std::max(target.coeff_scale(), 1e-30);
    check("coefficient_match", err <= 1e-7, err);
  }

  rv.verdict = true;
  for (const auto& c : rv.structure_checks) rv.verdict = rv.verdict && c.pass;
  return rv;
}

NonvanishingReport pencil_nonvanishing(const DetRep& rep, const DomainSpec& domain,
                                       std::size_t n_samples, std::uint64_t seed,
                                       SampleRegion region, double floor_abs, Exec exec) {
  SampleOptions sopt;
  sopt.exec = exec;
  const auto pts = sample(domain, n_samples, seed, region, sopt);
  const NumTol tol;
  const double mn = batch_min(n_samples, exec, [&](std::size_t i) {
    return std::abs(rep_value_at(rep, pts[i], tol));
  });
  NonvanishingReport r;
  r.min_abs = mn;
  r.samples = n_samples;
  r.ok = mn > floor_abs;
  return r;
}

LieBallCheck lieball_pencil_check(const CMatrix& k, int n, int kk, std::size_t n_samples,
                                  std::uint64_t seed, Exec exec) {
  const double nrm = op_norm(k);
  require_strict_contraction(nrm, "lieball_pencil_check");
  DomainSpec ball;
  ball.kind = DomainSpec::Kind::lie_ball;
  ball.dim = n;
  SampleOptions sopt;
  sopt.exec = exec;
  const auto pts = sample(ball, n_samples, seed, SampleRegion::interior, sopt);

  DetRep rep;
  rep.form = DetRep::Form::lie_pencil;
  rep.a0 = k;
  rep.structure = StructureMap::lie_ppm(n, kk);
  const NumTol tol;
  const CMatrix ik = CMatrix::identity(static_cast<std::size_t>(kk));

  std::vector<double> errs(n_samples, 0.0);
  const double mn = batch_min(n_samples, exec, [&](std::size_t i) {
    const auto& z = pts[i];
    const cplx direct = determinant(pencil_at(rep, z, tol));
    // factored route: det(P+ (x) I) * det(I - K (Q (x) I))
    const cplx detpp = ipow(1.0 - z[0], (n - 1) * kk);
    const CMatrix qk = CMatrix::kron(build_Q(z), ik);
    const cplx factored = detpp * determinant(CMatrix::identity(qk.rows()) - k * qk);
    errs[i] =
        std::abs(direct - factored) / std::max({std::abs(direct), std::abs(factored), 1e-30});
    return std::abs(direct);
  });
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  LieBallCheck c;
  c.min_abs_pencil = mn;
  c.factorization_max_rel_err = worst;
  c.samples = n_samples;
  c.ok = mn > 1e-12 && worst <= 1e-8;
  return c;
}

// ---- proof chains ----

namespace {

double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

double halfplane_chain_err(const CMatrix& k, const std::vector<int>& mults,
                           const std::vector<std::vector<cplx>>& pts) {
  const StructureMap sm = StructureMap::diagonal_zn(mults);
  const CMatrix id = CMatrix::identity(sm.dim());
  const CMatrix a0 = matrix_cayley(k);
  const cplx detik = determinant(id - k);
  double worst = 0.0;
  for (const auto& w : pts) {
    std::vector<cplx> z(w.size());
    cplx clear = 1.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      z[j] = phi_inv(w[j]);
      clear *= ipow(w[j] + kI, mults[j]);
    }
    const cplx lhs = determinant(id - k * apply_structure(sm, z)) * clear;
    const cplx rhs = determinant(a0 + apply_structure(sm, w)) * detik;
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

double lorentz2_chain_err(const CMatrix& k, const std::vector<std::vector<cplx>>& pts) {
  const std::size_t dim = k.rows();
  const int kk = static_cast<int>(dim / 2);
  const CMatrix id = CMatrix::identity(dim);
  const CMatrix a0 = kI * (id - k) * inverse(id + k);
  const cplx detik = determinant(id + k);
  const CMatrix ik = CMatrix::identity(static_cast<std::size_t>(kk));
  double worst = 0.0;
  for (const auto& w : pts) {
    const auto z = Phi_n_inv(w);
    const cplx dd = (w[0] + kI) * (w[0] + kI) - w[1] * w[1];
    const cplx lhs =
        determinant(id + k * CMatrix::kron(build_P2(z[0], z[1]), ik)) * ipow(dd, kk);
    const cplx rhs = determinant(a0 + CMatrix::kron(build_W(w), ik)) * detik;
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

double lorentzn_chain_err(const CMatrix& k, int n, int kk,
                          const std::vector<std::vector<cplx>>& pts) {
  const std::size_t nk = static_cast<std::size_t>(n) * static_cast<std::size_t>(kk);
  const EigenoneSplit split = split_eigenspace_at_one(k);
  const std::size_t m = split.k_tilde.rows();
  const CMatrix idm = CMatrix::identity(m);
  const CMatrix a0 = kI * inverse(idm - split.k_tilde) * (idm + split.k_tilde);
  const cplx cpref = ipow(2.0 * kI, static_cast<int>(nk - m)) *
                     determinant(idm - split.k_tilde) * ipow(2.0 * kI, (n - 1) * kk);
  const CMatrix ik = CMatrix::identity(static_cast<std::size_t>(kk));
  double worst = 0.0;
  for (const auto& w : pts) {
    const auto z = Phi_n_inv(w);
    cplx dd = (w[0] + kI) * (w[0] + kI);
    for (std::size_t j = 1; j < w.size(); ++j) dd -= w[j] * w[j];
    const auto [pp, pm] = build_Ppm(z);
    const cplx lhs =
        determinant(CMatrix::kron(pp, ik) - k * CMatrix::kron(pm, ik)) * ipow(dd, n * kk);
    const CMatrix compressed = split.v.adjoint() * CMatrix::kron(build_W(w), ik) * split.v;
    const cplx rhs = cpref * ipow(w[0] + kI, kk) * determinant(a0 + compressed);
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

double skew_chain_err(const CMatrix& k, int n, int mult,
                      const std::vector<std::vector<cplx>>& pts) {
  const std::size_t dim = static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(mult);
  const CMatrix id = CMatrix::identity(dim);
  const CMatrix j = skew_J(static_cast<std::size_t>(n));
  const CMatrix bj = CMatrix::kron(j, CMatrix::identity(static_cast<std::size_t>(mult)));
  const CMatrix a0 = kI * (id - bj * k) * inverse(id + bj * k);
  const cplx pref = determinant(id + bj * k);
  const StructureMap sm = StructureMap::skew_zj(n, mult);
  const CMatrix i2n = CMatrix::identity(static_cast<std::size_t>(2 * n));
  double worst = 0.0;
  for (const auto& wv : pts) {
    const CMatrix w = skew_from_vars(n, wv);
    const CMatrix z = psi_inv(w);
    const cplx clear = ipow(determinant(w * j + kI * i2n), mult);
    const cplx lhs =
        determinant(id -
                    k * CMatrix::kron(z, CMatrix::identity(static_cast<std::size_t>(mult)))) *
        clear;
    const cplx rhs = determinant(a0 + apply_structure(sm, wv)) * pref;
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

double cartan_chain_err(const CMatrix& k, const std::vector<StructureMap::Block>& blocks,
                        const std::vector<std::vector<cplx>>& pts) {
  const StructureMap sm = StructureMap::cartan(blocks);
  const CMatrix id = CMatrix::identity(sm.dim());
  const CMatrix a0 = matrix_cayley(k);
  const cplx detik = determinant(id - k);
  double worst = 0.0;
  for (const auto& wv : pts) {
    const auto mats = cartan_matrices_from_vars(blocks, wv);
    std::vector<CMatrix> disc_blocks;
    cplx clear = 1.0;
    for (std::size_t q = 0; q < mats.size(); ++q) {
      const CMatrix zq = matrix_cayley_inv(mats[q]);
      disc_blocks.push_back(
          CMatrix::kron(zq, CMatrix::identity(static_cast<std::size_t>(blocks[q].mult))));
      const CMatrix wi = mats[q] + CMatrix::identity(mats[q].rows()) * kI;
      clear *= ipow(determinant(wi), blocks[q].mult);
    }
    const cplx lhs = determinant(id - k * CMatrix::block_diag(disc_blocks)) * clear;
    const cplx rhs = determinant(a0 + apply_structure(sm, wv)) * detik;
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

}  // namespace tubestab
