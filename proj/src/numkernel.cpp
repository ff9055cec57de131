#include "tubestab/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tubestab {

namespace {

double herm_asym(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

}  // namespace

HermEigenResult herm_eigs(const CMatrix& a0, const NumTol& tol) {
  require(a0.square(), errc::dim_mismatch, "herm_eigs needs a square matrix");
  const std::size_t n = a0.rows();
  const double scale = std::max(a0.norm_max(), 1e-300);
  require(herm_asym(a0) <= tol.herm_sym * scale * n, errc::not_hermitian,
          "input is not Hermitian within tolerance");

  CMatrix a = real_part(a0);  // exact Hermitian part; diagonal becomes real
  CMatrix v = CMatrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  const double stop = 1e-15 * std::max(a.norm_fro(), 1e-300);
  const int max_sweeps = 100;
  int sweep = 0;
  while (off_norm() > stop) {
    require(++sweep <= max_sweeps, errc::no_convergence, "Jacobi sweep cap hit");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // unitary G with columns G(:,p)=(c, -phibar*s), G(:,q)=(s, phibar*c),
        // phi = apq/|apq|; zeroes the (p,q) entry of G* A G
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phi = apq / mag;
        const cplx phibar = std::conj(phi);
        // A <- G* A G
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - phibar * s * akq;
          a(k, q) = s * akp + phibar * c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - phi * s * aqk;
          a(q, k) = s * apk + phi * c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - phibar * s * vkq;
          v(k, q) = s * vkp + phibar * c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEigenResult res;
  res.eigenvalues.resize(n);
  res.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    res.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, j) = v(i, order[j]);
  }

  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a0(i, k) * res.vectors(k, j);
      acc -= res.eigenvalues[j] * res.vectors(i, j);
      r2 += std::norm(acc);
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  res.residual = worst;
  require(res.residual <= std::max(tol.eig_residual * scale * n, 1e-12),
          errc::no_convergence, "eigen residual above tolerance");
  return res;
}

double min_eig_herm(const CMatrix& a, const NumTol& tol) {
  return herm_eigs(a, tol).eigenvalues.front();
}

double op_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.norm_max() == 0.0) return 0.0;
  const CMatrix g = a.adjoint() * a;  // Hermitian PSD
  const auto eigs = herm_eigs(g);
  return std::sqrt(std::max(eigs.eigenvalues.back(), 0.0));
}

namespace {

// LU with partial pivoting; returns false when a pivot falls under the
// singularity threshold (det is then ~0 and solves must not proceed).
struct LU {
  CMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

LU lu_factor(const CMatrix& a, double pivot_rel) {
  const std::size_t n = a.rows();
  LU f{a, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const double floor_abs = pivot_rel * std::max(a.norm_inf(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > best) { best = std::abs(f.lu(i, k)); piv = i; }
    if (best < floor_abs) { f.singular = true; return f; }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    const cplx d = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx m = f.lu(i, k) / d;
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

}  // namespace

cplx determinant(const CMatrix& a) {
  require(a.square(), errc::dim_mismatch, "determinant needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  LU f = lu_factor(a, 0.0);  // no floor: a zero determinant is a valid value
  if (f.singular) return 0.0;
  cplx d = static_cast<double>(f.sign);
  for (std::size_t k = 0; k < n; ++k) d *= f.lu(k, k);
  return d;
}

CMatrix inverse(const CMatrix& a, const NumTol& tol) {
  require(a.square(), errc::dim_mismatch, "inverse needs a square matrix");
  const std::size_t n = a.rows();
  LU f = lu_factor(a, tol.pivot_rel);
  require(!f.singular, errc::singular_pencil, "matrix numerically singular");
  CMatrix inv(n, n);
  std::vector<cplx> col(n), y(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (f.perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = col[i];
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = y[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * inv(j, c);
      inv(ii, c) = s / f.lu(ii, ii);
    }
  }
  const double cond = a.norm_inf() * inv.norm_inf();
  require(cond <= tol.cond_cap, errc::ill_conditioned, "condition number above cap");
  return inv;
}

CMatrix schur_complement(const CMatrix& m, std::size_t b0, std::size_t b1, const NumTol& tol) {
  require(m.square(), errc::dim_mismatch, "schur_complement needs a square matrix");
  const std::size_t n = m.rows();
  require(b0 < b1 && b1 <= n, errc::dim_mismatch, "bad block range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (i < b0 || i >= b1) keep.push_back(i);
  const std::size_t ka = keep.size(), kd = b1 - b0;
  CMatrix a(ka, ka), b(ka, kd), c(kd, ka), d(kd, kd);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j) a(i, j) = m(keep[i], keep[j]);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < kd; ++j) b(i, j) = m(keep[i], b0 + j);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < ka; ++j) c(i, j) = m(b0 + i, keep[j]);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) d(i, j) = m(b0 + i, b0 + j);
  CMatrix dinv;
  try {
    dinv = inverse(d, tol);
  } catch (const Error&) {
    fail(errc::singular_block, "complemented block is not invertible");
  }
  return a - b * dinv * c;
}

CMatrix matrix_cayley(const CMatrix& x, const NumTol& tol) {
  require(x.square(), errc::dim_mismatch, "matrix_cayley needs a square matrix");
  const CMatrix id = CMatrix::identity(x.rows());
  CMatrix inv_term;
  try {
    inv_term = inverse(id - x, tol);
  } catch (const Error&) {
    fail(errc::singular_pencil, "I - X not invertible");
  }
  return cplx(0.0, 1.0) * (id + x) * inv_term;
}

CMatrix matrix_cayley_inv(const CMatrix& w, const NumTol& tol) {
  require(w.square(), errc::dim_mismatch, "matrix_cayley_inv needs a square matrix");
  const CMatrix id = CMatrix::identity(w.rows());
  const cplx i1(0.0, 1.0);
  CMatrix inv_term;
  try {
    inv_term = inverse(w + i1 * id, tol);
  } catch (const Error&) {
    fail(errc::singular_pencil, "W + iI not invertible");
  }
  return (w - i1 * id) * inv_term;
}

}  // namespace tubestab
