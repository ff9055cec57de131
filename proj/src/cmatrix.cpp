#include "tubestab/cmatrix.hpp"

#include <cmath>

namespace tubestab {

const char* errc_name(errc c) {
  switch (c) {
    case errc::dim_mismatch: return "DimMismatch";
    case errc::not_hermitian: return "NotHermitian";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::not_skew: return "NotSkew";
    case errc::not_contraction: return "NotContraction";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_real_coefficient: return "NotRealCoefficient";
    case errc::no_convergence: return "NoConvergence";
    case errc::singular_pencil: return "SingularPencil";
    case errc::singular_block: return "SingularBlock";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::degree_too_small: return "DegreeTooSmall";
    case errc::duplicate_nodes: return "DuplicateNodes";
    case errc::pole: return "Pole";
    case errc::pole_at_one: return "PoleAtOne";
    case errc::pattern_violation: return "PatternViolation";
    case errc::split_failure: return "SplitFailure";
    case errc::weight_pole: return "WeightPole";
    case errc::normalization_failure: return "NormalizationFailure";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::schema_error: return "SchemaError";
  }
  return "UnknownError";
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  require(a_.size() == rows_ * cols_, errc::dim_mismatch, "entry count != rows*cols");
  require(finite(), errc::schema_error, "matrix entries must be finite");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, errc::dim_mismatch, "ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  require(finite(), errc::schema_error, "matrix entries must be finite");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

CMatrix CMatrix::block_diag(const std::vector<CMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  CMatrix m(r, c);
  std::size_t i0 = 0, j0 = 0;
  for (const auto& b : blocks) {
    m.set_block(i0, j0, b);
    i0 += b.rows();
    j0 += b.cols();
  }
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m = *this;
  for (auto& x : m.a_) x = std::conj(x);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  require(r0 <= r1 && r1 <= rows_ && c0 <= c1 && c1 <= cols_, errc::dim_mismatch, "block range");
  CMatrix m(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*this)(i, j);
  return m;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
  require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, errc::dim_mismatch, "set_block range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMatrix& CMatrix::operator+=(const CMatrix& b) {
  require(rows_ == b.rows_ && cols_ == b.cols_, errc::dim_mismatch, "matrix add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& b) {
  require(rows_ == b.rows_ && cols_ == b.cols_, errc::dim_mismatch, "matrix sub");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.rows(), errc::dim_mismatch, "matrix mul");
  CMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> v) const {
  require(v.size() == cols_, errc::dim_mismatch, "matrix-vector apply");
  std::vector<cplx> out(rows_, cplx(0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double CMatrix::norm_max() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

double CMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

double CMatrix::norm_fro() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::dist_max(const CMatrix& b) const {
  require(rows_ == b.rows_ && cols_ == b.cols_, errc::dim_mismatch, "dist_max");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - b.a_[i]));
  return m;
}

bool CMatrix::finite() const {
  for (const auto& x : a_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

CMatrix imag_part(const CMatrix& a) {
  require(a.square(), errc::dim_mismatch, "imag_part needs square input");
  CMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = (a(i, j) - std::conj(a(j, i))) / cplx(0.0, 2.0);
  return m;
}

CMatrix real_part(const CMatrix& a) {
  require(a.square(), errc::dim_mismatch, "real_part needs square input");
  CMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = (a(i, j) + std::conj(a(j, i))) / 2.0;
  return m;
}

}  // namespace tubestab
