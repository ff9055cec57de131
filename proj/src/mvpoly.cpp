#include "tubestab/mvpoly.hpp"

#include <algorithm>
#include <cmath>

namespace tubestab {

namespace {

// ascending-coefficient univariate helpers used by the substitution code

std::vector<cplx> uni_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> c(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> uni_pow(std::vector<cplx> base, int e) {
  std::vector<cplx> acc{cplx(1.0)};
  while (e > 0) {
    if (e & 1) acc = uni_mul(acc, base);
    e >>= 1;
    if (e) base = uni_mul(base, base);
  }
  return acc;
}

}  // namespace

MultiPoly MultiPoly::constant(std::size_t nvars, cplx c) {
  MultiPoly p(nvars);
  p.add_term(Expo(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t j) {
  require(j < nvars, errc::dim_mismatch, "variable index out of range");
  MultiPoly p(nvars);
  Expo e(nvars, 0);
  e[j] = 1;
  p.add_term(e, 1.0);
  return p;
}

double MultiPoly::coeff_scale() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

cplx MultiPoly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void MultiPoly::add_term(const Expo& e, cplx c) {
  require(e.size() == nvars_, errc::dim_mismatch, "exponent vector length");
  if (c == cplx(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

void MultiPoly::prune(double rel_tol) {
  const double floor_abs = rel_tol * coeff_scale();
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (std::abs(it->second) <= floor_abs) ? terms_.erase(it) : std::next(it);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
  require(nvars_ == b.nvars_, errc::dim_mismatch, "nvars mismatch in add");
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& b) {
  require(nvars_ == b.nvars_, errc::dim_mismatch, "nvars mismatch in sub");
  for (const auto& [e, c] : b.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require(a.nvars() == b.nvars(), errc::dim_mismatch, "nvars mismatch in mul");
  MultiPoly p(a.nvars());
  MultiPoly::Expo e(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      p.add_term(e, ca * cb);
    }
  return p;
}

MultiPoly MultiPoly::scaled(cplx s) const {
  MultiPoly p(nvars_);
  if (s == cplx(0.0)) return p;
  for (const auto& [e, c] : terms_) p.terms_[e] = c * s;
  return p;
}

MultiPoly MultiPoly::conj_coefficients() const {
  MultiPoly p(nvars_);
  for (const auto& [e, c] : terms_) p.terms_[e] = std::conj(c);
  return p;
}

cplx MultiPoly::eval(std::span<const cplx> z) const {
  require(z.size() == nvars_, errc::dim_mismatch, "eval point length");
  // power tables per variable up to the needed degree
  std::vector<std::vector<cplx>> pows(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) {
    pows[j].assign(static_cast<std::size_t>(degree_in(j)) + 1, cplx(1.0));
    for (std::size_t k = 1; k < pows[j].size(); ++k) pows[j][k] = pows[j][k - 1] * z[j];
  }
  cplx acc = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx t = c;
    for (std::size_t j = 0; j < nvars_; ++j)
      if (e[j]) t *= pows[j][static_cast<std::size_t>(e[j])];
    acc += t;
  }
  return acc;
}

std::pair<cplx, double> MultiPoly::eval_with_scale(std::span<const cplx> z) const {
  require(z.size() == nvars_, errc::dim_mismatch, "eval point length");
  std::vector<std::vector<cplx>> pows(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) {
    pows[j].assign(static_cast<std::size_t>(degree_in(j)) + 1, cplx(1.0));
    for (std::size_t k = 1; k < pows[j].size(); ++k) pows[j][k] = pows[j][k - 1] * z[j];
  }
  cplx acc = 0.0;
  double scale = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx t = c;
    for (std::size_t j = 0; j < nvars_; ++j)
      if (e[j]) t *= pows[j][static_cast<std::size_t>(e[j])];
    acc += t;
    scale += std::abs(t);
  }
  return {acc, scale};
}

MultiDegree MultiPoly::multidegree() const {
  MultiDegree d;
  d.per_var.assign(nvars_, 0);
  for (const auto& [e, c] : terms_) {
    int sum = 0;
    for (std::size_t j = 0; j < nvars_; ++j) {
      d.per_var[j] = std::max(d.per_var[j], e[j]);
      sum += e[j];
    }
    d.total = std::max(d.total, sum);
  }
  return d;
}

int MultiPoly::total_degree() const { return multidegree().total; }

int MultiPoly::degree_in(std::size_t j) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e[j]);
  return m;
}

MultiPoly MultiPoly::homogeneous_part(int i) const {
  MultiPoly p(nvars_);
  for (const auto& [e, c] : terms_) {
    int sum = 0;
    for (int x : e) sum += x;
    if (sum == i) p.terms_[e] = c;
  }
  return p;
}

MultiPoly MultiPoly::homogenize() const {
  const int n = total_degree();
  MultiPoly p(nvars_ + 1);
  for (const auto& [e, c] : terms_) {
    Expo f(nvars_ + 1);
    int sum = 0;
    for (std::size_t j = 0; j < nvars_; ++j) { f[j + 1] = e[j]; sum += e[j]; }
    f[0] = n - sum;
    p.terms_[f] = c;
  }
  return p;
}

MultiPoly MultiPoly::dehomogenize() const {
  require(nvars_ >= 1, errc::dim_mismatch, "dehomogenize needs >= 1 variable");
  MultiPoly p(nvars_ - 1);
  for (const auto& [e, c] : terms_)
    p.add_term(Expo(e.begin() + 1, e.end()), c);
  return p;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::real_imag_split() const {
  MultiPoly r(nvars_), q(nvars_);
  for (const auto& [e, c] : terms_) {
    if (c.real() != 0.0) r.terms_[e] = c.real();
    if (c.imag() != 0.0) q.terms_[e] = c.imag();
  }
  return {r, q};
}

double MultiPoly::max_imag_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

MultiPoly MultiPoly::line_restrict(std::span<const double> x, std::span<const double> y) const {
  require(x.size() == nvars_ && y.size() == nvars_, errc::dim_mismatch,
          "line_restrict direction length");
  std::vector<cplx> acc{cplx(0.0)};
  for (const auto& [e, c] : terms_) {
    std::vector<cplx> t{c};
    for (std::size_t j = 0; j < nvars_; ++j)
      if (e[j]) t = uni_mul(t, uni_pow({cplx(x[j]), cplx(y[j])}, e[j]));
    if (t.size() > acc.size()) acc.resize(t.size(), cplx(0.0));
    for (std::size_t i = 0; i < t.size(); ++i) acc[i] += t[i];
  }
  MultiPoly p = from_univariate(acc);
  p.prune();
  return p;
}

MultiPoly MultiPoly::mobius_substitute(const std::vector<int>& degrees, Mobius dir) const {
  require(degrees.size() == nvars_, errc::dim_mismatch, "degree vector length");
  const auto d = multidegree();
  for (std::size_t j = 0; j < nvars_; ++j)
    require(d.per_var[j] <= degrees[j], errc::degree_too_small,
            "declared degree below actual degree");

  const cplx i1(0.0, 1.0);
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    MultiPoly acc = MultiPoly::constant(nvars_, c);
    for (std::size_t j = 0; j < nvars_; ++j) {
      std::vector<cplx> f;
      if (dir == Mobius::disc_to_halfplane) {
        // [i(1+z)]^{e_j} (1-z)^{n_j-e_j}
        f = uni_mul(uni_pow({i1, i1}, e[j]), uni_pow({cplx(1.0), cplx(-1.0)}, degrees[j] - e[j]));
      } else {
        // (z-i)^{e_j} (z+i)^{n_j-e_j}
        f = uni_mul(uni_pow({-i1, cplx(1.0)}, e[j]), uni_pow({i1, cplx(1.0)}, degrees[j] - e[j]));
      }
      MultiPoly fac(nvars_);
      Expo ex(nvars_, 0);
      for (std::size_t k = 0; k < f.size(); ++k) {
        ex[j] = static_cast<int>(k);
        fac.add_term(ex, f[k]);
      }
      acc = acc * fac;
    }
    out += acc;
  }
  out.prune();
  return out;
}

std::vector<cplx> MultiPoly::univariate_coeffs() const {
  require(nvars_ == 1, errc::dim_mismatch, "univariate access on multivariate polynomial");
  std::vector<cplx> c(static_cast<std::size_t>(degree_in(0)) + 1, cplx(0.0));
  for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e[0])] = v;
  return c;
}

MultiPoly MultiPoly::from_univariate(std::span<const cplx> coeffs) {
  MultiPoly p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    p.add_term({static_cast<int>(k)}, coeffs[k]);
  return p;
}

std::vector<double> chebyshev_nodes(int count) {
  std::vector<double> x(static_cast<std::size_t>(count));
  if (count == 1) { x[0] = 0.0; return x; }
  for (int k = 0; k < count; ++k)
    x[static_cast<std::size_t>(k)] = std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * count));
  return x;
}

namespace {

// Newton divided differences, then expansion to monomial coefficients.
void newton_to_monomial(const std::vector<double>& x, std::vector<cplx>& f) {
  const std::size_t m = x.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = m - 1; i >= k; --i) {
      f[i] = (f[i] - f[i - 1]) / (x[i] - x[i - k]);
      if (i == k) break;
    }
  std::vector<cplx> c(m, cplx(0.0));
  c[0] = f[m - 1];
  std::size_t deg = 0;
  for (std::size_t kk = m - 1; kk-- > 0;) {
    // c(t) <- c(t)*(t - x[kk]) + f[kk]
    ++deg;
    for (std::size_t i = deg; i >= 1; --i) c[i] = c[i - 1] - x[kk] * c[i];
    c[0] = f[kk] - x[kk] * c[0];
  }
  f = std::move(c);
}

}  // namespace

MultiPoly interpolate_from_grid(const std::vector<std::vector<double>>& nodes,
                                std::span<const cplx> values) {
  const std::size_t d = nodes.size();
  std::size_t total = 1;
  for (const auto& nd : nodes) {
    require(!nd.empty(), errc::dim_mismatch, "empty node list");
    for (std::size_t i = 0; i < nd.size(); ++i)
      for (std::size_t j = i + 1; j < nd.size(); ++j)
        require(std::abs(nd[i] - nd[j]) > 1e-14, errc::duplicate_nodes, "repeated node");
    total *= nd.size();
  }
  require(values.size() == total, errc::dim_mismatch, "grid value count");

  std::vector<cplx> t(values.begin(), values.end());
  // strides, last variable fastest
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t j = d; j-- > 1;) stride[j - 1] = stride[j] * nodes[j].size();

  std::vector<cplx> line;
  for (std::size_t axis = 0; axis < d; ++axis) {
    const std::size_t m = nodes[axis].size();
    const std::size_t st = stride[axis];
    const std::size_t nlines = total / m;
    for (std::size_t l = 0; l < nlines; ++l) {
      // base offset of line l along `axis`
      const std::size_t outer = l / st;
      const std::size_t inner = l % st;
      const std::size_t base = outer * st * m + inner;
      line.resize(m);
      for (std::size_t i = 0; i < m; ++i) line[i] = t[base + i * st];
      newton_to_monomial(nodes[axis], line);
      for (std::size_t i = 0; i < m; ++i) t[base + i * st] = line[i];
    }
  }

  MultiPoly p(d);
  MultiPoly::Expo e(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = 0; j < d; ++j) {
      e[j] = static_cast<int>(rem / stride[j] % nodes[j].size());
    }
    p.add_term(e, t[idx]);
  }
  p.prune();
  return p;
}

std::vector<cplx> evaluate_on_grid(const std::vector<std::vector<double>>& nodes,
                                   const std::function<cplx(std::span<const cplx>)>& fn,
                                   Exec mode) {
  const std::size_t d = nodes.size();
  std::size_t total = 1;
  for (const auto& nd : nodes) total *= nd.size();
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t j = d; j-- > 1;) stride[j - 1] = stride[j] * nodes[j].size();
  std::vector<cplx> out(total);
  batch_for(total, mode, [&](std::size_t idx) {
    std::vector<cplx> z(d);
    for (std::size_t j = 0; j < d; ++j)
      z[j] = nodes[j][idx / stride[j] % nodes[j].size()];
    out[idx] = fn(z);
  });
  return out;
}

}  // namespace tubestab
