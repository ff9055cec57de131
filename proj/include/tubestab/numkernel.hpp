#ifndef TUBESTAB_NUMKERNEL_HPP
#define TUBESTAB_NUMKERNEL_HPP

#include <vector>

#include "tubestab/cmatrix.hpp"

namespace tubestab {

// Shared numeric policy.  Everything is an explicit parameter with these
// defaults; there are no hidden globals.
struct NumTol {
  double herm_sym = 1e-8;     // ||A - A*|| <= herm_sym * ||A|| gate
  double eig_residual = 1e-10;  // residual cap, scaled by ||A||
  double pivot_rel = 1e-13;   // |pivot| < pivot_rel * ||A||_inf  => singular
  double cond_cap = 1e12;     // inversions beyond this fail loudly
};

struct HermEigenResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // orthonormal columns, same order
  double residual;                  // max_k ||A v_k - lambda_k v_k||_2
};

// Eigenvalues of a (numerically) Hermitian matrix by cyclic Jacobi rotations.
HermEigenResult herm_eigs(const CMatrix& a, const NumTol& tol = {});

double min_eig_herm(const CMatrix& a, const NumTol& tol = {});

// Largest singular value via the Hermitian eigenvalues of A*A.
double op_norm(const CMatrix& a);

// Determinant by partially pivoted LU.
cplx determinant(const CMatrix& a);

CMatrix inverse(const CMatrix& a, const NumTol& tol = {});

// A - B D^{-1} C for the 2x2 partition where D is the contiguous index block
// [b0, b1) and A is everything else (order preserved).
CMatrix schur_complement(const CMatrix& m, std::size_t b0, std::size_t b1,
                         const NumTol& tol = {});

// phi(X) = i(I+X)(I-X)^{-1} and phi^{-1}(W) = (W-iI)(W+iI)^{-1}
CMatrix matrix_cayley(const CMatrix& x, const NumTol& tol = {});
CMatrix matrix_cayley_inv(const CMatrix& w, const NumTol& tol = {});

}  // namespace tubestab

#endif
