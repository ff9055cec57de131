#ifndef TUBESTAB_CMATRIX_HPP
#define TUBESTAB_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tubestab/errors.hpp"

namespace tubestab {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.  Entries must be finite; constructors that
// accept data enforce that.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> d);
  static CMatrix kron(const CMatrix& a, const CMatrix& b);
  static CMatrix block_diag(const std::vector<CMatrix>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return a_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const cplx> data() const { return a_; }
  std::span<cplx> data() { return a_; }

  CMatrix transpose() const;
  CMatrix conj() const;
  CMatrix adjoint() const;

  CMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);

  CMatrix& operator+=(const CMatrix& b);
  CMatrix& operator-=(const CMatrix& b);
  CMatrix& operator*=(cplx s);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  std::vector<cplx> apply(std::span<const cplx> v) const;  // A v

  double norm_max() const;   // max |a_ij|
  double norm_inf() const;   // max row sum
  double norm_fro() const;
  double dist_max(const CMatrix& b) const;  // max |a_ij - b_ij|

  bool finite() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

// (A - A*)/2i and (A + A*)/2
CMatrix imag_part(const CMatrix& a);
CMatrix real_part(const CMatrix& a);

}  // namespace tubestab

#endif
