#ifndef TUBESTAB_CAYLEY_HPP
#define TUBESTAB_CAYLEY_HPP

#include <array>

#include "tubestab/numkernel.hpp"

namespace tubestab {

// scalar disc <-> half-plane maps
cplx phi(cplx z);       // i(1+z)/(1-z)
cplx phi_inv(cplx w);   // (w-i)/(w+i)

// ---- spin-factor product on C^n (nonassociative for n >= 3) ----
using JordanVector = std::vector<cplx>;
JordanVector jordan_mul(const JordanVector& u, const JordanVector& v);
JordanVector jordan_inv(const JordanVector& u);

// ---- Lie ball <-> Lorentz tube rational maps ----
std::vector<cplx> Phi_n(std::span<const cplx> z);
std::vector<cplx> Phi_n_inv(std::span<const cplx> w);
// Cayley form of Phi_n through the spin-factor product: with
// u = (z1, -i z2, ..., -i zn),  Phi_n(z) = i * ( -(ie+iu)(iu-ie)^{-1} ).
std::vector<cplx> Phi_n_jordan_form(std::span<const cplx> z);

struct Phi2Link {
  std::array<cplx, 2> w;
  double consistency;  // max |phi(P(z)) - [[w1,-iw2],[iw2,w1]]|
};
Phi2Link Phi_2_pencil_link(cplx z1, cplx z2, const NumTol& tol = {});

// ---- skew-symmetric domain maps ----
CMatrix skew_J(std::size_t n);  // [[0, I],[-I, 0]], size 2n
CMatrix psi(const CMatrix& z, const NumTol& tol = {});      // i(-J+Z)(I-JZ)^{-1}
CMatrix psi_inv(const CMatrix& w, const NumTol& tol = {});  // (W+iJ)(iJ-W)^{-1} J

// ---- structured matrices ----
CMatrix build_W(std::span<const cplx> w);                 // Lorentz tube test matrix
CMatrix build_M(std::span<const cplx> z);                 // ||z||^2 I + zz* - conj(z)z^T
CMatrix build_Q(std::span<const cplx> z);                 // rational contraction
std::pair<CMatrix, CMatrix> build_Ppm(std::span<const cplx> z);  // (P+, P-) polynomial pair
std::pair<CMatrix, CMatrix> build_Sr_Tr(std::span<const cplx> z, double r);
CMatrix build_P2(cplx z1, cplx z2);  // [[z1,-z2],[z2,z1]]

// ---- exceptional-domain building blocks ----
CMatrix build_Y(std::span<const cplx> omega);        // 8x8 sign pattern
const std::array<CMatrix, 8>& generators_T();        // T_j = Y(e_j), integer entries
CMatrix build_X_zeta(std::span<const cplx> zeta);    // 17x17, zeta in C^27, zeta[0] != 1
std::array<CMatrix, 3> build_Omega(std::span<const cplx> w);  // three 17x17 summands

struct TubePattern {
  cplx w11, w22, w33;
  std::vector<cplx> w12, w13, w23;  // C^8 each
  double residual;                  // max deviation from the exact pattern
  std::vector<cplx> coords() const; // packed as C^27 in Omega_1 order
};
// read the 27 coordinates off a 17x17 matrix and report pattern residual
TubePattern read_tube_pattern(const CMatrix& m);

// closed-form phi of X = [[w, psi^T],[psi, Z - psi psi^T/(1-w)]]
CMatrix block_cayley_2x2(cplx w, std::span<const cplx> psi_vec, const CMatrix& z,
                         const NumTol& tol = {});

// ---- pencil structure descriptors ----
struct StructureMap {
  enum class Kind { diagonal_zn, cartan_blocks, skew_zj, lorentz_w, lie_ppm, exceptional_omega };
  struct Block {
    bool symmetric = false;  // Siegel factor (W = W^T)
    int size = 1;
    int mult = 1;
  };

  Kind kind = Kind::diagonal_zn;
  std::vector<int> multiplicities;  // diagonal_zn
  std::vector<Block> blocks;        // cartan_blocks
  int n = 2;                        // lorentz/lie: cone vars; skew: half-size (matrix 2n x 2n)
  int mult = 1;                     // skew N / lorentz k / lie k
  int summand = 1;                  // exceptional_omega: 1..3, 0 = direct sum of all three

  static StructureMap diagonal_zn(std::vector<int> n);
  static StructureMap cartan(std::vector<Block> blocks);
  static StructureMap skew_zj(int n, int mult);
  static StructureMap lorentz_w(int n, int k);
  static StructureMap lie_ppm(int n, int k);
  static StructureMap exceptional_omega(int summand);

  std::size_t nvars() const;
  std::size_t dim() const;  // output matrix dimension
};

// The structured matrix L(z).  Linear in z for every kind except lie_ppm,
// which is served through build_Ppm (this returns Q(z) (x) I_k there).
CMatrix apply_structure(const StructureMap& sm, std::span<const cplx> z,
                        const NumTol& tol = {});

// assemble the full skew matrix from the n(2n-1) strictly-upper variables
CMatrix skew_from_vars(int n, std::span<const cplx> z);
// assemble a Cartan-product point (block diagonal) from flattened variables
std::vector<CMatrix> cartan_matrices_from_vars(const std::vector<StructureMap::Block>& blocks,
                                               std::span<const cplx> z);

}  // namespace tubestab

#endif
