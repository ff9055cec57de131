#include "tubestab/cayley.hpp"

#include <cmath>

namespace tubestab {

namespace {
constexpr cplx kI(0.0, 1.0);
}

cplx phi(cplx z) {
  require(std::abs(1.0 - z) > 1e-14, errc::pole, "phi pole at z = 1");
  return kI * (1.0 + z) / (1.0 - z);
}

cplx phi_inv(cplx w) {
  require(std::abs(w + kI) > 1e-14, errc::pole, "phi_inv pole at w = -i");
  return (w - kI) / (w + kI);
}

JordanVector jordan_mul(const JordanVector& u, const JordanVector& v) {
  require(u.size() == v.size() && !u.empty(), errc::dim_mismatch, "jordan_mul sizes");
  JordanVector z(u.size());
  cplx z1 = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) z1 += u[j] * v[j];
  for (std::size_t j = 1; j < u.size(); ++j) z[j] = u[0] * v[j] + u[j] * v[0];
  z[0] = z1;
  return z;
}

JordanVector jordan_inv(const JordanVector& u) {
  require(!u.empty(), errc::dim_mismatch, "jordan_inv on empty vector");
  cplx q = u[0] * u[0];
  for (std::size_t j = 1; j < u.size(); ++j) q -= u[j] * u[j];
  require(std::abs(q) > 1e-14, errc::not_invertible, "u1^2 - u2^2 - ... - un^2 = 0");
  JordanVector v(u.size());
  v[0] = u[0] / q;
  for (std::size_t j = 1; j < u.size(); ++j) v[j] = -u[j] / q;
  return v;
}

std::vector<cplx> Phi_n(std::span<const cplx> z) {
  require(z.size() >= 2, errc::dim_mismatch, "Phi_n needs n >= 2");
  cplx tail_sq = 0.0, all_sq = 0.0;
  for (std::size_t j = 1; j < z.size(); ++j) tail_sq += z[j] * z[j];
  all_sq = z[0] * z[0] + tail_sq;
  const cplx den = (1.0 - z[0]) * (1.0 - z[0]) + tail_sq;
  require(std::abs(den) > 1e-14, errc::pole, "Phi_n pole: (1-z1)^2 + z2^2 + ... = 0");
  std::vector<cplx> w(z.size());
  w[0] = kI * (1.0 - all_sq) / den;
  for (std::size_t j = 1; j < z.size(); ++j) w[j] = 2.0 * z[j] / den;
  return w;
}

std::vector<cplx> Phi_n_inv(std::span<const cplx> w) {
  require(w.size() >= 2, errc::dim_mismatch, "Phi_n_inv needs n >= 2");
  cplx tail_sq = 0.0;
  for (std::size_t j = 1; j < w.size(); ++j) tail_sq += w[j] * w[j];
  const cplx den = (w[0] + kI) * (w[0] + kI) - tail_sq;
  require(std::abs(den) > 1e-14, errc::pole, "Phi_n_inv pole: (w1+i)^2 - w2^2 - ... = 0");
  std::vector<cplx> z(w.size());
  z[0] = (1.0 + w[0] * w[0] - tail_sq) / den;
  for (std::size_t j = 1; j < w.size(); ++j) z[j] = -2.0 * w[j] / den;
  return z;
}

std::vector<cplx> Phi_n_jordan_form(std::span<const cplx> z) {
  const std::size_t n = z.size();
  JordanVector u(z.begin(), z.end());
  for (std::size_t j = 1; j < n; ++j) u[j] *= -kI;  // coordinate twist
  JordanVector e(n, 0.0);
  e[0] = 1.0;
  JordanVector a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = kI * (e[j] + u[j]);
    b[j] = kI * u[j] - kI * e[j];
  }
  JordanVector c = jordan_mul(a, jordan_inv(b));
  for (auto& x : c) x *= -kI;  // i * ( -(...) )
  return c;
}

Phi2Link Phi_2_pencil_link(cplx z1, cplx z2, const NumTol& tol) {
  const std::array<cplx, 2> zz{z1, z2};
  const auto w = Phi_n(zz);
  CMatrix expect{{w[0], -kI * w[1]}, {kI * w[1], w[0]}};
  CMatrix got = matrix_cayley(build_P2(z1, z2), tol);
  Phi2Link link;
  link.w = {w[0], w[1]};
  link.consistency = got.dist_max(expect);
  return link;
}

CMatrix skew_J(std::size_t n) {
  CMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

namespace {

void require_skew(const CMatrix& z, const char* who) {
  require(z.square() && z.rows() % 2 == 0, errc::dim_mismatch, "skew matrix must be 2n x 2n");
  const double scale = std::max(z.norm_max(), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j)
      worst = std::max(worst, std::abs(z(i, j) + z(j, i)));
  require(worst <= 1e-10 * scale * static_cast<double>(z.rows()), errc::not_skew, who);
}

}  // namespace

CMatrix psi(const CMatrix& z, const NumTol& tol) {
  require_skew(z, "psi input");
  const std::size_t m = z.rows();
  const CMatrix j = skew_J(m / 2);
  const CMatrix id = CMatrix::identity(m);
  CMatrix inv_term;
  try {
    inv_term = inverse(id - j * z, tol);
  } catch (const Error&) {
    fail(errc::singular_pencil, "I - JZ not invertible");
  }
  return kI * ((z - j) * inv_term);
}

CMatrix psi_inv(const CMatrix& w, const NumTol& tol) {
  require_skew(w, "psi_inv input");
  const std::size_t m = w.rows();
  const CMatrix j = skew_J(m / 2);
  CMatrix inv_term;
  try {
    inv_term = inverse(kI * j - w, tol);
  } catch (const Error&) {
    fail(errc::singular_pencil, "iJ - W not invertible");
  }
  return (w + kI * j) * inv_term * j;
}

CMatrix build_W(std::span<const cplx> w) {
  const std::size_t n = w.size();
  require(n >= 2, errc::dim_mismatch, "build_W needs n >= 2");
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = w[0];
  for (std::size_t j = 1; j < n; ++j) {
    m(0, j) = -kI * w[j];
    m(j, 0) = kI * w[j];
  }
  return m;
}

CMatrix build_M(std::span<const cplx> z) {
  const std::size_t n = z.size();
  double nz = 0.0;
  for (const auto& x : z) nz += std::norm(x);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = z[i] * std::conj(z[j]) - std::conj(z[i]) * z[j];
    m(i, i) += nz;
  }
  return m;
}

CMatrix build_Q(std::span<const cplx> z) {
  const std::size_t n = z.size();
  require(n >= 2, errc::dim_mismatch, "build_Q needs n >= 2");
  require(std::abs(1.0 - z[0]) > 1e-12, errc::pole_at_one, "Q(z) pole at z1 = 1");
  cplx tail_sq = 0.0;
  for (std::size_t j = 1; j < n; ++j) tail_sq += z[j] * z[j];
  CMatrix q(n, n);
  q(0, 0) = z[0];
  for (std::size_t j = 1; j < n; ++j) {
    q(0, j) = -z[j];
    q(j, 0) = z[j];
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = 1; l < n; ++l)
      q(k, l) = (k == l) ? z[0] - (tail_sq - z[k] * z[k]) / (1.0 - z[0])
                         : z[k] * z[l] / (1.0 - z[0]);
  return q;
}

std::pair<CMatrix, CMatrix> build_Sr_Tr(std::span<const cplx> z, double r) {
  const std::size_t n = z.size();
  require(n >= 2, errc::dim_mismatch, "build_Sr_Tr needs n >= 2");
  cplx tail_sq = 0.0;
  for (std::size_t j = 1; j < n; ++j) tail_sq += z[j] * z[j];
  const cplx rz = r - z[0];
  CMatrix s(n, n), t(n, n);
  s(0, 0) = 1.0;
  for (std::size_t j = 1; j < n; ++j) s(j, j) = rz;
  t(0, 0) = z[0];
  for (std::size_t j = 1; j < n; ++j) {
    t(0, j) = -z[j] * rz;
    t(j, 0) = z[j];
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = 1; l < n; ++l)
      t(k, l) = (k == l) ? z[0] * rz - (tail_sq - z[k] * z[k]) : z[k] * z[l];
  return {s, t};
}

std::pair<CMatrix, CMatrix> build_Ppm(std::span<const cplx> z) { return build_Sr_Tr(z, 1.0); }

CMatrix build_P2(cplx z1, cplx z2) { return CMatrix{{z1, -z2}, {z2, z1}}; }

namespace {

// Y(omega) sign/index pattern, rows as printed; index is 1-based
struct YEntry { int sign; int idx; };
constexpr YEntry kYPattern[8][8] = {
    {{+1,1},{+1,2},{+1,3},{+1,4},{+1,5},{+1,6},{+1,7},{+1,8}},
    {{+1,2},{-1,1},{-1,4},{+1,3},{-1,6},{+1,5},{+1,8},{-1,7}},
    {{+1,3},{+1,4},{-1,1},{-1,2},{-1,7},{-1,8},{+1,5},{+1,6}},
    {{+1,4},{-1,3},{+1,2},{-1,1},{-1,8},{+1,7},{-1,6},{+1,5}},
    {{+1,5},{+1,6},{+1,7},{+1,8},{-1,1},{-1,2},{-1,3},{-1,4}},
    {{+1,6},{-1,5},{+1,8},{-1,7},{+1,2},{-1,1},{+1,4},{-1,3}},
    {{+1,7},{-1,8},{-1,5},{+1,6},{+1,3},{-1,4},{-1,1},{+1,2}},
    {{+1,8},{+1,7},{-1,6},{-1,5},{+1,4},{+1,3},{-1,2},{-1,1}},
};

}  // namespace

CMatrix build_Y(std::span<const cplx> omega) {
  require(omega.size() == 8, errc::dim_mismatch, "build_Y needs an 8-vector");
  CMatrix y(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const auto& e = kYPattern[i][j];
      y(i, j) = static_cast<double>(e.sign) * omega[static_cast<std::size_t>(e.idx - 1)];
    }
  return y;
}

const std::array<CMatrix, 8>& generators_T() {
  static const std::array<CMatrix, 8> gens = [] {
    std::array<CMatrix, 8> g;
    for (std::size_t j = 0; j < 8; ++j) {
      std::vector<cplx> e(8, 0.0);
      e[j] = 1.0;
      g[j] = build_Y(e);
    }
    return g;
  }();
  return gens;
}

CMatrix build_X_zeta(std::span<const cplx> zeta) {
  require(zeta.size() == 27, errc::dim_mismatch, "build_X_zeta needs a 27-vector");
  // layout: (w1, x[8], y[8], w2, z[8], w3)
  const cplx w1 = zeta[0];
  require(std::abs(1.0 - w1) > 1e-12, errc::pole_at_one, "X(zeta) pole at w1 = 1");
  std::span<const cplx> x = zeta.subspan(1, 8), y = zeta.subspan(9, 8);
  const cplx w2 = zeta[17];
  std::span<const cplx> z = zeta.subspan(18, 8);
  const cplx w3 = zeta[26];

  CMatrix m(17, 17);
  m(0, 0) = w1;
  for (std::size_t j = 0; j < 8; ++j) {
    m(0, 1 + j) = x[j];
    m(1 + j, 0) = x[j];
    m(0, 9 + j) = y[j];
    m(9 + j, 0) = y[j];
    m(1 + j, 1 + j) = w2;
    m(9 + j, 9 + j) = w3;
  }
  const CMatrix yz = build_Y(z);
  m.set_block(1, 9, yz);
  m.set_block(9, 1, yz.transpose());
  // rank-one correction on the lower 16x16 block
  std::vector<cplx> psi_vec(16);
  for (std::size_t j = 0; j < 8; ++j) { psi_vec[j] = x[j]; psi_vec[8 + j] = y[j]; }
  const cplx f = 1.0 / (1.0 - w1);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j)
      m(1 + i, 1 + j) -= f * psi_vec[i] * psi_vec[j];
  return m;
}

std::array<CMatrix, 3> build_Omega(std::span<const cplx> w) {
  require(w.size() == 27, errc::dim_mismatch, "build_Omega needs a 27-vector");
  const cplx w11 = w[0], w22 = w[17], w33 = w[26];
  std::span<const cplx> w12 = w.subspan(1, 8), w13 = w.subspan(9, 8), w23 = w.subspan(18, 8);
  const CMatrix& t1 = generators_T()[0];

  auto assemble = [](cplx d0, cplx dA, cplx dB, std::span<const cplx> r1,
                     std::span<const cplx> r2, const CMatrix& b) {
    CMatrix m(17, 17);
    m(0, 0) = d0;
    for (std::size_t j = 0; j < 8; ++j) {
      m(0, 1 + j) = r1[j];
      m(1 + j, 0) = r1[j];
      m(0, 9 + j) = r2[j];
      m(9 + j, 0) = r2[j];
      m(1 + j, 1 + j) = dA;
      m(9 + j, 9 + j) = dB;
    }
    m.set_block(1, 9, b);
    m.set_block(9, 1, b.transpose());
    return m;
  };

  const CMatrix b1 = build_Y(w23);
  const CMatrix b2 = t1 * build_Y(w13);
  // third summand: the PD-equivalent block is Y(w12) T1 (see the Schur
  // route through the switch identity Y(v)^T u = T1 Y(u)^T v)
  const CMatrix b3 = build_Y(w12) * t1;
  return {assemble(w11, w22, w33, w12, w13, b1), assemble(w22, w11, w33, w12, w23, b2),
          assemble(w33, w22, w11, w23, w13, b3)};
}

TubePattern read_tube_pattern(const CMatrix& m) {
  require(m.rows() == 17 && m.cols() == 17, errc::dim_mismatch, "tube pattern is 17x17");
  TubePattern p;
  p.w11 = m(0, 0);
  p.w22 = m(1, 1);
  p.w33 = m(9, 9);
  p.w12.resize(8);
  p.w13.resize(8);
  p.w23.resize(8);
  for (std::size_t j = 0; j < 8; ++j) {
    p.w12[j] = m(1 + j, 0);
    p.w13[j] = m(9 + j, 0);
    p.w23[j] = m(1 + j, 9);  // first column of Y(w23) is w23 itself
  }
  std::vector<cplx> coords = p.coords();
  const auto rebuilt = build_Omega(coords)[0];
  p.residual = m.dist_max(rebuilt);
  return p;
}

std::vector<cplx> TubePattern::coords() const {
  std::vector<cplx> c(27);
  c[0] = w11;
  for (std::size_t j = 0; j < 8; ++j) c[1 + j] = w12[j];
  for (std::size_t j = 0; j < 8; ++j) c[9 + j] = w13[j];
  c[17] = w22;
  for (std::size_t j = 0; j < 8; ++j) c[18 + j] = w23[j];
  c[26] = w33;
  return c;
}

CMatrix block_cayley_2x2(cplx w, std::span<const cplx> psi_vec, const CMatrix& z,
                         const NumTol& tol) {
  require(z.square() && z.rows() == psi_vec.size(), errc::dim_mismatch,
          "block_cayley_2x2 sizes");
  require(std::abs(1.0 - w) > 1e-12, errc::pole_at_one, "corner pole at w = 1");
  const std::size_t n = z.rows();
  CMatrix iz_inv;
  try {
    iz_inv = inverse(CMatrix::identity(n) - z, tol);
  } catch (const Error&) {
    fail(errc::singular_pencil, "I - Z not invertible");
  }
  const std::vector<cplx> izp = iz_inv.apply(psi_vec);
  cplx quad = 0.0;
  for (std::size_t j = 0; j < n; ++j) quad += psi_vec[j] * izp[j];

  CMatrix out(n + 1, n + 1);
  out(0, 0) = phi(w) + 2.0 * kI / ((1.0 - w) * (1.0 - w)) * quad;
  const cplx corner = 2.0 * kI / (1.0 - w);
  for (std::size_t j = 0; j < n; ++j) {
    cplx row_j = 0.0;  // (psi^T (I-Z)^{-1})_j
    for (std::size_t i = 0; i < n; ++i) row_j += psi_vec[i] * iz_inv(i, j);
    out(0, 1 + j) = corner * row_j;
    out(1 + j, 0) = corner * izp[j];
  }
  out.set_block(1, 1, matrix_cayley(z, tol));
  return out;
}

StructureMap StructureMap::diagonal_zn(std::vector<int> n) {
  StructureMap s;
  s.kind = Kind::diagonal_zn;
  s.multiplicities = std::move(n);
  return s;
}
StructureMap StructureMap::cartan(std::vector<Block> blocks) {
  StructureMap s;
  s.kind = Kind::cartan_blocks;
  s.blocks = std::move(blocks);
  return s;
}
StructureMap StructureMap::skew_zj(int n, int mult) {
  StructureMap s;
  s.kind = Kind::skew_zj;
  s.n = n;
  s.mult = mult;
  return s;
}
StructureMap StructureMap::lorentz_w(int n, int k) {
  StructureMap s;
  s.kind = Kind::lorentz_w;
  s.n = n;
  s.mult = k;
  return s;
}
StructureMap StructureMap::lie_ppm(int n, int k) {
  StructureMap s;
  s.kind = Kind::lie_ppm;
  s.n = n;
  s.mult = k;
  return s;
}
StructureMap StructureMap::exceptional_omega(int summand) {
  StructureMap s;
  s.kind = Kind::exceptional_omega;
  s.summand = summand;
  return s;
}

std::size_t StructureMap::nvars() const {
  switch (kind) {
    case Kind::diagonal_zn: return multiplicities.size();
    case Kind::cartan_blocks: {
      std::size_t d = 0;
      for (const auto& b : blocks)
        d += b.symmetric ? static_cast<std::size_t>(b.size) * (b.size + 1) / 2
                         : static_cast<std::size_t>(b.size) * b.size;
      return d;
    }
    case Kind::skew_zj: return static_cast<std::size_t>(n) * (2 * n - 1);
    case Kind::lorentz_w:
    case Kind::lie_ppm: return static_cast<std::size_t>(n);
    case Kind::exceptional_omega: return 27;
  }
  return 0;
}

std::size_t StructureMap::dim() const {
  switch (kind) {
    case Kind::diagonal_zn: {
      std::size_t s = 0;
      for (int m : multiplicities) s += static_cast<std::size_t>(m);
      return s;
    }
    case Kind::cartan_blocks: {
      std::size_t s = 0;
      for (const auto& b : blocks) s += static_cast<std::size_t>(b.size) * b.mult;
      return s;
    }
    case Kind::skew_zj: return static_cast<std::size_t>(2 * n) * mult;
    case Kind::lorentz_w:
    case Kind::lie_ppm: return static_cast<std::size_t>(n) * mult;
    case Kind::exceptional_omega: return summand == 0 ? 51 : 17;
  }
  return 0;
}

CMatrix skew_from_vars(int n, std::span<const cplx> z) {
  const std::size_t m = static_cast<std::size_t>(2 * n);
  require(z.size() == static_cast<std::size_t>(n) * (2 * n - 1), errc::dim_mismatch,
          "skew variable count");
  CMatrix s(m, m);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      s(i, j) = z[idx];
      s(j, i) = -z[idx];
      ++idx;
    }
  return s;
}

std::vector<CMatrix> cartan_matrices_from_vars(const std::vector<StructureMap::Block>& blocks,
                                               std::span<const cplx> z) {
  std::vector<CMatrix> out;
  std::size_t idx = 0;
  for (const auto& b : blocks) {
    const std::size_t l = static_cast<std::size_t>(b.size);
    CMatrix m(l, l);
    if (b.symmetric) {
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) {
          m(i, j) = z[idx];
          m(j, i) = z[idx];
          ++idx;
        }
    } else {
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) m(i, j) = z[idx++];
    }
    out.push_back(std::move(m));
  }
  require(idx == z.size(), errc::dim_mismatch, "cartan variable count");
  return out;
}

CMatrix apply_structure(const StructureMap& sm, std::span<const cplx> z, const NumTol& tol) {
  require(z.size() == sm.nvars(), errc::dim_mismatch, "apply_structure variable count");
  switch (sm.kind) {
    case StructureMap::Kind::diagonal_zn: {
      std::vector<cplx> d;
      for (std::size_t j = 0; j < sm.multiplicities.size(); ++j)
        d.insert(d.end(), static_cast<std::size_t>(sm.multiplicities[j]), z[j]);
      return CMatrix::diagonal(d);
    }
    case StructureMap::Kind::cartan_blocks: {
      const auto mats = cartan_matrices_from_vars(sm.blocks, z);
      std::vector<CMatrix> expanded;
      for (std::size_t q = 0; q < mats.size(); ++q)
        expanded.push_back(
            CMatrix::kron(mats[q], CMatrix::identity(static_cast<std::size_t>(sm.blocks[q].mult))));
      return CMatrix::block_diag(expanded);
    }
    case StructureMap::Kind::skew_zj: {
      const CMatrix s = skew_from_vars(sm.n, z);
      const CMatrix zj = s * skew_J(static_cast<std::size_t>(sm.n));
      return CMatrix::kron(zj, CMatrix::identity(static_cast<std::size_t>(sm.mult)));
    }
    case StructureMap::Kind::lorentz_w:
      return CMatrix::kron(build_W(z), CMatrix::identity(static_cast<std::size_t>(sm.mult)));
    case StructureMap::Kind::lie_ppm:
      return CMatrix::kron(build_Q(z), CMatrix::identity(static_cast<std::size_t>(sm.mult)));
    case StructureMap::Kind::exceptional_omega: {
      const auto omegas = build_Omega(z);
      if (sm.summand >= 1 && sm.summand <= 3)
        return omegas[static_cast<std::size_t>(sm.summand - 1)];
      return CMatrix::block_diag({omegas[0], omegas[1], omegas[2]});
    }
  }
  (void)tol;
  fail(errc::schema_error, "unknown structure kind");
}

}  // namespace tubestab
