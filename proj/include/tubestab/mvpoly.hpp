#ifndef TUBESTAB_MVPOLY_HPP
#define TUBESTAB_MVPOLY_HPP

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tubestab/batch.hpp"
#include "tubestab/cmatrix.hpp"

namespace tubestab {

struct MultiDegree {
  std::vector<int> per_var;
  int total = 0;
};

// Sparse multivariable polynomial with complex coefficients.  Terms are kept
// in a lexicographically ordered map so serialization is deterministic; zero
// coefficients are never stored.
class MultiPoly {
public:
  using Expo = std::vector<int>;

  explicit MultiPoly(std::size_t nvars = 1) : nvars_(nvars) {}
  static MultiPoly constant(std::size_t nvars, cplx c);
  static MultiPoly variable(std::size_t nvars, std::size_t j);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Expo, cplx>& terms() const { return terms_; }
  double coeff_scale() const;  // max |c|
  cplx coeff(const Expo& e) const;

  void add_term(const Expo& e, cplx c);
  void prune(double rel_tol = 1e-12);

  MultiPoly& operator+=(const MultiPoly& b);
  MultiPoly& operator-=(const MultiPoly& b);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(cplx s) const;
  MultiPoly conj_coefficients() const;  // coefficient-wise conjugate

  cplx eval(std::span<const cplx> z) const;
  // value together with sum |c| |z|^e, the backward-error scale of evaluation
  std::pair<cplx, double> eval_with_scale(std::span<const cplx> z) const;

  MultiDegree multidegree() const;
  int total_degree() const;
  int degree_in(std::size_t j) const;

  MultiPoly homogeneous_part(int i) const;
  MultiPoly homogenize() const;    // (nvars+1)-variable; variable 0 is mu0
  MultiPoly dehomogenize() const;  // set variable 0 = 1

  // p = r + i q with real-coefficient r, q
  std::pair<MultiPoly, MultiPoly> real_imag_split() const;
  double max_imag_coeff() const;

  // univariate p(x + t y) in t; x, y real direction data
  MultiPoly line_restrict(std::span<const double> x, std::span<const double> y) const;

  enum class Mobius { disc_to_halfplane, halfplane_to_disc };
  // z_j -> phi(z_j) (or phi^{-1}) with denominator clearing by the supplied
  // per-variable degrees; exact expansion, no sampling
  MultiPoly mobius_substitute(const std::vector<int>& degrees, Mobius dir) const;

  // univariate access (ascending coefficients)
  std::vector<cplx> univariate_coeffs() const;
  static MultiPoly from_univariate(std::span<const cplx> coeffs);

private:
  std::size_t nvars_;
  std::map<Expo, cplx> terms_;
};

std::vector<double> chebyshev_nodes(int count);

// Unique polynomial of the given per-variable degrees matching all values on
// the tensor-product grid.  `values` is row-major with the last variable
// fastest; size = prod(nodes[j].size()), nodes[j].size() = degrees[j]+1.
MultiPoly interpolate_from_grid(const std::vector<std::vector<double>>& nodes,
                                std::span<const cplx> values);

// Evaluate fn over the tensor-product grid (same layout); the sweep is the
// data-parallel kernel behind pencil extraction.
std::vector<cplx> evaluate_on_grid(const std::vector<std::vector<double>>& nodes,
                                   const std::function<cplx(std::span<const cplx>)>& fn,
                                   Exec mode = Exec::parallel);

}  // namespace tubestab

#endif
