// Test-only oracles, independent of the library paths they cross-check.
#ifndef TUBESTAB_TESTS_ORACLES_HPP
#define TUBESTAB_TESTS_ORACLES_HPP

#include <vector>

#include "tubestab/cayley.hpp"
#include "tubestab/mvpoly.hpp"
#include "tubestab/numkernel.hpp"
#include "tubestab/rng.hpp"

namespace tubestab::testing {

inline CMatrix rand_cmatrix(Rng& rng, std::size_t r, std::size_t c) {
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.cnormal();
  return m;
}

inline CMatrix rand_contraction(Rng& rng, std::size_t n, double norm) {
  CMatrix g = rand_cmatrix(rng, n, n);
  const double s = op_norm(g);
  return g * cplx(norm / (s > 0 ? s : 1.0));
}

inline CMatrix rand_hermitian(Rng& rng, std::size_t n) {
  CMatrix g = rand_cmatrix(rng, n, n);
  return real_part(g);
}

// ascending coefficients of det(tI - A) by Faddeev-LeVerrier
inline std::vector<cplx> char_poly_coeffs(const CMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<cplx> c(n + 1, cplx(0.0));
  c[n] = 1.0;
  CMatrix m = a;
  cplx ck = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      CMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) += ck;
      m = a * shifted;
    }
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
    ck = -tr / static_cast<double>(k);
    c[n - k] = ck;
  }
  return c;
}

// symbolic determinant by Laplace expansion along the first column
inline MultiPoly detpoly_cofactor(const std::vector<std::vector<MultiPoly>>& m) {
  const std::size_t n = m.size();
  const std::size_t nv = m[0][0].nvars();
  if (n == 1) return m[0][0];
  MultiPoly acc(nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<MultiPoly> row(m[r].begin() + 1, m[r].end());
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[i][0] * detpoly_cofactor(minor);
    acc += (i % 2 == 0) ? term : term.scaled(-1.0);
  }
  return acc;
}

// entries of I - K Z_N(z) as polynomials, for the cofactor oracle
inline std::vector<std::vector<MultiPoly>> disc_pencil_entries(const CMatrix& k,
                                                               const std::vector<int>& mults) {
  const std::size_t n = k.rows();
  const std::size_t d = mults.size();
  std::vector<std::size_t> var_of(n);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < d; ++j)
    for (int c = 0; c < mults[j]; ++c) var_of[pos++] = j;
  std::vector<std::vector<MultiPoly>> rows(n, std::vector<MultiPoly>(n, MultiPoly(d)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly e(d);
      MultiPoly::Expo ex(d, 0);
      ex[var_of[j]] = 1;
      e.add_term(ex, -k(i, j));
      if (i == j) e.add_term(MultiPoly::Expo(d, 0), 1.0);
      rows[i][j] = e;
    }
  return rows;
}

inline MultiPoly rand_poly(Rng& rng, std::size_t nvars, int maxdeg, int nterms) {
  MultiPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    MultiPoly::Expo e(nvars);
    for (auto& x : e) x = static_cast<int>(rng.uniform(0.0, maxdeg + 0.999));
    p.add_term(e, rng.cnormal());
  }
  if (p.is_zero()) p.add_term(MultiPoly::Expo(nvars, 0), 1.0);
  return p;
}

}  // namespace tubestab::testing

#endif
