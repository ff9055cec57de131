#ifndef TUBESTAB_DETREP_HPP
#define TUBESTAB_DETREP_HPP

#include <optional>
#include <string>

#include "tubestab/domains.hpp"
#include "tubestab/mvpoly.hpp"

namespace tubestab {

struct Prefactor {
  cplx c{1.0, 0.0};
  int w1_plus_i_pow = 0;  // exponent of (z_1 + i)
};

// A certified determinantal representation.  The represented polynomial is
//   prefactor.c * (z1+i)^pow * det(pencil(z)),
// where the pencil depends on `form`:
//   affine:            A0 + L(z)          (V-compressed when isometry is set)
//   disc_contraction:  I - K L(z)         (a0 holds K)
//   lie_pencil:        (P+ (x) I_k) - K (P- (x) I_k)
struct DetRep {
  enum class Form { affine, disc_contraction, lie_pencil };

  Form form = Form::affine;
  CMatrix a0;
  StructureMap structure;
  int k = 1;  // tensor multiplicity
  std::optional<CMatrix> isometry;
  Prefactor prefactor;
  std::string construction;  // provenance path tag
  double source_norm = 0.0;  // operator norm of the source contraction

  std::size_t nvars() const { return structure.nvars(); }
  std::size_t pencil_dim() const;
};

CMatrix pencil_at(const DetRep& rep, std::span<const cplx> z, const NumTol& tol = {});
cplx rep_value_at(const DetRep& rep, std::span<const cplx> z, const NumTol& tol = {});

struct BuiltRep {
  DetRep rep;
  MultiPoly poly;  // extracted certified polynomial (zero when skipped)
  bool extracted = false;
  double a0_im_min_eig = 0.0;
  double a0_im_formula_err = 0.0;  // direct vs factored Im A0, halfplane push only
};

// det(I - K Z_N(z)) with explicit coefficients; constant term 1
BuiltRep polydisk_rep_from_contraction(const CMatrix& k, const std::vector<int>& mults);

// A0 = i(I+K)(I-K)^{-1}, A_j coordinate projections
BuiltRep cayley_push_halfplane(const CMatrix& k, const std::vector<int>& mults);

// A0 = i(I-K)(I+K)^{-1} against W(w) (x) I_k, K of size 2k x 2k
BuiltRep lorentz2_rep_from_contraction(const CMatrix& k);

// eigenvalue-1 split K = U (I (+) Ktilde) U*; A0 = i(I-Kt)^{-1}(I+Kt)
BuiltRep lorentzn_rep_from_contraction(const CMatrix& k, int n, int kk);

// A0 = i(I - (J (x) I_N)K)(I + (J (x) I_N)K)^{-1} against (ZJ (x) I_N)
BuiltRep skew_rep_from_contraction(const CMatrix& k, int n, int mult);

// stores K against the (P+, P-) pencil pair
BuiltRep lieball_rep_from_contraction(const CMatrix& k, int n, int kk);

struct EigenoneSplit {
  CMatrix v;        // nk x m isometry onto the complement
  CMatrix k_tilde;  // m x m compression, I - Ktilde invertible
  std::size_t cluster_dim = 0;
};
// |lambda - 1| < cluster_tol joins the cluster; SplitFailure when the cluster
// is not numerically reducing
EigenoneSplit split_eigenspace_at_one(const CMatrix& k, double cluster_tol = 1e-8);

struct CheckItem {
  std::string name;
  bool pass = false;
  double value = 0.0;
};

struct RepVerification {
  double identity_max_rel_err = 0.0;
  double a0_im_min_eig = 0.0;
  std::vector<CheckItem> structure_checks;
  bool verdict = false;
  std::size_t samples_used = 0;
};

struct VerifyOptions {
  std::size_t samples = 512;
  std::uint64_t seed = 1;
  double id_tol = 1e-8;             // relative, scaled by pencil condition
  bool coefficient_compare = true;  // full comparison when the grid budget allows
  std::size_t grid_budget = 300000;
  Exec exec = Exec::parallel;
};

// failures land in the verdict, never as exceptions
RepVerification verify_rep(const MultiPoly& p, const MultiPoly& q, const DetRep& rep,
                           const VerifyOptions& opt = {});

// interpolate the full coefficient list of the represented polynomial
MultiPoly extract_polynomial(const DetRep& rep, std::size_t grid_budget = 300000,
                             Exec exec = Exec::parallel);
std::vector<int> extraction_degrees(const DetRep& rep);

struct NonvanishingReport {
  double min_abs = 0.0;
  std::size_t samples = 0;
  bool ok = false;  // min_abs above floor
};
NonvanishingReport pencil_nonvanishing(const DetRep& rep, const DomainSpec& domain,
                                       std::size_t n_samples, std::uint64_t seed,
                                       SampleRegion region = SampleRegion::interior,
                                       double floor_abs = 1e-12, Exec exec = Exec::parallel);

// Lie-ball pencil check via the det(P+ (x) I) * det(I - K(Q (x) I)) factorization
struct LieBallCheck {
  double min_abs_pencil = 0.0;
  double factorization_max_rel_err = 0.0;
  std::size_t samples = 0;
  bool ok = false;
};
LieBallCheck lieball_pencil_check(const CMatrix& k, int n, int kk, std::size_t n_samples,
                                  std::uint64_t seed, Exec exec = Exec::parallel);

// ---- proof-chain cross-checks (max relative error over the given points) ----

// disc det * prod(w_j+i)^{N_j}  vs  det(A0 + Z_N(w)) * det(I-K)
double halfplane_chain_err(const CMatrix& k, const std::vector<int>& mults,
                           const std::vector<std::vector<cplx>>& halfplane_points);
// disc det * D(w)^k  vs  det(A0 + W(w) (x) I_k) * det(I+K)
double lorentz2_chain_err(const CMatrix& k, const std::vector<std::vector<cplx>>& tube_points);
// lie pencil det * D(w)^{nk}  vs  (2i)^{nk-m} det(I-Kt) (2i)^{(n-1)k} (w1+i)^k det(A0 + V*(W (x) I)V)
double lorentzn_chain_err(const CMatrix& k, int n, int kk,
                          const std::vector<std::vector<cplx>>& tube_points);
// skew disc det * det(WJ+iI)^N  vs  det(A0 + WJ (x) I_N) * det(I + (J (x) I)K)
double skew_chain_err(const CMatrix& k, int n, int mult,
                      const std::vector<std::vector<cplx>>& skew_points);
// cartan disc det * prod det(W_q+iI)^{N_q}  vs  det(A0 + L(W)) * det(I-K)
double cartan_chain_err(const CMatrix& k, const std::vector<StructureMap::Block>& blocks,
                        const std::vector<std::vector<cplx>>& points);

}  // namespace tubestab

#endif
