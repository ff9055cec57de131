#ifndef TUBESTAB_DOMAINS_HPP
#define TUBESTAB_DOMAINS_HPP

#include <string>

#include "tubestab/batch.hpp"
#include "tubestab/cayley.hpp"
#include "tubestab/rng.hpp"

namespace tubestab {

// Domains and cones, each with the membership characterizations the theory
// provides.  Points travel as flat complex vectors: matrix domains use
// row-major entries (upper triangle only for Siegel factors), the Lorentz
// cone uses real parts, the exceptional tube uses its 27 coordinates.
struct DomainSpec {
  enum class Kind {
    polydisk,
    halfplane_tube,
    lie_ball,
    lorentz_cone,
    lorentz_tube,
    matrix_uhp,
    siegel_uhp,
    skew_domain,
    cartan_product,
    bounded_exceptional27,
    exceptional_tube27,
  };
  Kind kind = Kind::polydisk;
  int dim = 1;  // d / n / l / s; skew_domain: half-size n (matrices are 2n x 2n)
  std::vector<StructureMap::Block> factors;  // cartan_product

  std::size_t point_size() const;
  static const char* kind_name(Kind k);
};

struct MembershipReport {
  bool inside = false;
  double margin = 0.0;      // min eig of the PD condition or 1 - contraction norm
  bool boundary = false;    // |margin| within margin_tol
  std::string method;
};

inline constexpr double kMarginTol = 1e-9;  // strict interiors only

MembershipReport in_polydisk(std::span<const cplx> z);
MembershipReport in_halfplane_tube(std::span<const cplx> z);
MembershipReport in_lorentz_cone(std::span<const double> x);

// Im W(w) > 0, cross-checkable against in_lorentz_cone(Im w)
MembershipReport in_lorentz_tube(std::span<const cplx> w, const NumTol& tol = {});

enum class LieBallMethod { eig_formula, M_matrix, Q_contraction, Ppm_pencil };
MembershipReport in_lie_ball(std::span<const cplx> z, LieBallMethod method,
                             const NumTol& tol = {});

MembershipReport in_matrix_uhp(const CMatrix& z, bool symmetric, const NumTol& tol = {});
MembershipReport in_skew_domain(const CMatrix& w, const NumTol& tol = {});

MembershipReport in_exceptional_bounded(std::span<const cplx> zeta);
// validates the block pattern first (PatternViolation on failure)
MembershipReport in_exceptional_tube(const CMatrix& w17, const NumTol& tol = {});

// dispatcher on flattened points
MembershipReport membership(const DomainSpec& spec, std::span<const cplx> point,
                            const NumTol& tol = {});

enum class SampleRegion { interior, near_boundary };

struct SampleOptions {
  double margin_floor = 0.02;   // interior samples keep margin >= this
  double boundary_band = 0.05;  // near-boundary margins land in (0, band]
  int max_rejects = 20000;
  Exec exec = Exec::parallel;
};

// Deterministic for a fixed seed regardless of scheduling.
std::vector<std::vector<cplx>> sample(const DomainSpec& spec, std::size_t count,
                                      std::uint64_t seed, SampleRegion where,
                                      const SampleOptions& opt = {});

}  // namespace tubestab

#endif
