#ifndef TUBESTAB_ROOTFIND_HPP
#define TUBESTAB_ROOTFIND_HPP

#include <optional>

#include "tubestab/mvpoly.hpp"

namespace tubestab {

struct RootOptions {
  double tol = 1e-13;        // backward-error stop, relative to evaluation scale
  int max_iter = 600;
  double cluster_tol = 2e-5;  // pairwise distance (relative) that merges roots
  double residual_cap = 1e-8;
};

struct RootSet {
  std::vector<cplx> roots;          // cluster representatives
  std::vector<int> multiplicity;    // same order
  double residual = 0.0;            // max |p(root)| / leading-coefficient scale
  std::size_t degree = 0;           // sum of multiplicities

  std::vector<cplx> expanded() const;  // roots repeated by multiplicity
};

// Aberth-Ehrlich simultaneous iteration with Newton polish and cluster merge.
RootSet find_roots(const MultiPoly& p, const RootOptions& opt = {});
RootSet find_roots(std::span<const cplx> ascending_coeffs, const RootOptions& opt = {});

struct HurwitzResult {
  bool stable = false;    // no root with Im above the band
  bool boundary = false;  // max Im within +-band of zero
  double margin = 0.0;    // max Im over roots (-inf when no roots)
  std::optional<cplx> witness;  // offending root when unstable
};

HurwitzResult is_hurwitz_stable(const MultiPoly& p, double stability_band = 1e-9,
                                const RootOptions& opt = {});

enum class Interlace { strict, weak, fails };

struct InterlacingVerdict {
  Interlace verdict = Interlace::strict;
  std::optional<std::pair<double, double>> witness;  // violating adjacent pair
  bool degenerate = false;  // one side had no roots (degree <= 0)
};

// Both real-rooted (within real_band) and alternating roots; degrees may
// differ by at most one.  Shared roots downgrade strict to weak.
InterlacingVerdict real_rooted_and_interlace(const MultiPoly& r, const MultiPoly& q,
                                             double real_band = 1e-6,
                                             const RootOptions& opt = {});

}  // namespace tubestab

#endif
