#ifndef TUBESTAB_STABILITY_HPP
#define TUBESTAB_STABILITY_HPP

#include "tubestab/detrep.hpp"
#include "tubestab/rootfind.hpp"

namespace tubestab {

struct StabilityReport {
  enum class Verdict { no_zero_found, falsified };
  Verdict verdict = Verdict::no_zero_found;
  std::vector<cplx> witness;        // domain member with |p| below tolerance
  double witness_abs = 0.0;         // |p(witness)|
  double witness_margin = 0.0;      // domain margin at the witness
  double min_abs_over_samples = 0.0;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
};

struct StabilityOptions {
  std::size_t interior_samples = 2000;
  std::size_t boundary_samples = 200;
  double falsify_tol = 1e-10;  // relative to the local coefficient scale
  bool witness_polish = true;  // Newton refinement from the smallest samples
  Exec exec = Exec::parallel;
};

// Sampling falsifies with a checked witness or reports the evidence
// (min |p|, counts); a no_zero_found verdict is never a proof.
StabilityReport sampled_stability(const MultiPoly& p, const DomainSpec& spec,
                                  std::uint64_t seed, const StabilityOptions& opt = {});

enum class WeightKind {
  halfplane_product,   // prod |z_j + i|^{n_j}
  cartan_det,          // prod |det(Z_q + iI)|^{t_q}
  skew_det,            // |det(Z - iJ)|^{t}
  lorentz2_rational,   // the displayed T_{C_2} weight
  lorentzn_rational,   // the displayed T_{C_n} weight
};

struct StrictnessEstimate {
  double epsilon_hat = 0.0;  // min over samples of |p|/weight; upper bound on the true eps
  WeightKind weight_kind = WeightKind::halfplane_product;
  std::size_t samples_used = 0;
  double far_field_radius = 0.0;  // largest radius visited by the schedule
};

struct StrictnessOptions {
  std::size_t base_samples = 2000;
  std::size_t per_radius = 400;
  std::vector<double> radii{1.0, 10.0, 100.0, 1000.0};
  Exec exec = Exec::parallel;
};

StrictnessEstimate strictness_estimate(const MultiPoly& p, const DomainSpec& spec,
                                       WeightKind kind, std::uint64_t seed,
                                       const StrictnessOptions& opt = {});

double weight_at(WeightKind kind, const DomainSpec& spec, const MultiDegree& deg,
                 std::span<const cplx> z);

struct EquivalenceReport {
  double weighted_min = 0.0;     // (i)  min |p| / prod|z_j+i|^{n_j}
  double disc_min = 0.0;         // (ii) min |p~| on the polydisk
  double halfplane_min = 0.0;    // (iii) min |p| on H^d
  double extreme_coeff = 0.0;    // |coefficient of prod z_j^{n_j}|
  bool holds_i = false, holds_ii = false, holds_iii = false;
  bool consistent = false;       // the three verdicts coincide
};

// the three equivalent strictness conditions, evaluated at sample level
EquivalenceReport prop_s3_equivalences(const MultiPoly& p, std::uint64_t seed,
                                       double eps_floor = 1e-6,
                                       std::size_t n_samples = 3000, Exec exec = Exec::parallel);

struct LineCheckReport {
  std::size_t lines = 0;
  std::size_t hurwitz_failures = 0;
  std::size_t interlace_failures = 0;
  std::size_t im_ratio_failures = 0;  // Im r/q <= 0 at an interior point
  std::size_t degenerate_lines = 0;   // q = 0 on the line
  std::vector<cplx> witness;          // tube point where a failure surfaced
  bool all_pass = false;
};

// fibered Hurwitz stability plus r/q interlacing plus the sign of Im r/q
// along lines x + t y with y in the sampled cone
LineCheckReport theorem1_line_checks(const MultiPoly& p,
                                     const std::vector<std::vector<double>>& cone_samples,
                                     const std::vector<std::vector<double>>& x_samples,
                                     double stability_band = 1e-9);

struct NormalizationResult {
  cplx c{1.0, 0.0};       // phase making c * p_n real
  double residual = 0.0;  // max |Im(c * coeff)| / scale after normalization
};
NormalizationResult normalize_initial_form(const MultiPoly& pn, double tol = 1e-9);

struct HyperbolicityReport {
  cplx normalization{1.0, 0.0};
  std::size_t lines = 0;
  std::size_t failures = 0;
  std::vector<double> witness_x, witness_y;
  bool all_pass = false;
};

// real-rootedness of p_n(x + t y) for sampled x in R^d, y in the cone
HyperbolicityReport initial_form_hyperbolicity(
    const MultiPoly& p, const std::vector<std::vector<double>>& cone_samples,
    const std::vector<std::vector<double>>& x_samples);

struct InterlaceLinesReport {
  cplx normalization{1.0, 0.0};
  std::size_t lines = 0;
  std::size_t failures = 0;
  std::size_t degenerate = 0;
  bool all_pass = false;
};

// interlacing of p_n and q_{n-1} along sampled lines
InterlaceLinesReport pn_qn1_interlacing(const MultiPoly& p,
                                        const std::vector<std::vector<double>>& cone_samples,
                                        const std::vector<std::vector<double>>& x_samples);

}  // namespace tubestab

#endif
