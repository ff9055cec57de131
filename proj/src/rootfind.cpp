#include "tubestab/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tubestab {

namespace {

// value and evaluation scale sum |c_i||z|^i (backward-error denominator)
std::pair<cplx, double> eval_with_scale(std::span<const cplx> c, cplx z) {
  cplx v = 0.0;
  double s = 0.0;
  const double az = std::abs(z);
  double p = 1.0;
  cplx zp = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    v += c[i] * zp;
    s += std::abs(c[i]) * p;
    zp *= z;
    p *= az;
  }
  return {v, std::max(s, 1e-300)};
}

cplx eval_deriv(std::span<const cplx> c, cplx z) {
  cplx v = 0.0, zp = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    v += static_cast<double>(i) * c[i] * zp;
    zp *= z;
  }
  return v;
}

}  // namespace

std::vector<cplx> RootSet::expanded() const {
  std::vector<cplx> out;
  for (std::size_t i = 0; i < roots.size(); ++i)
    out.insert(out.end(), static_cast<std::size_t>(multiplicity[i]), roots[i]);
  return out;
}

RootSet find_roots(const MultiPoly& p, const RootOptions& opt) {
  return find_roots(p.univariate_coeffs(), opt);
}

RootSet find_roots(std::span<const cplx> coeffs_in, const RootOptions& opt) {
  std::vector<cplx> c(coeffs_in.begin(), coeffs_in.end());
  double cmax = 0.0;
  for (const auto& x : c) cmax = std::max(cmax, std::abs(x));
  require(cmax > 0.0, errc::zero_polynomial, "root finding on the zero polynomial");
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * cmax) c.pop_back();
  const std::size_t n = c.size() - 1;

  RootSet rs;
  rs.degree = n;
  if (n == 0) { rs.residual = 0.0; return rs; }
  for (auto& x : c) x /= c.back();

  // initial guesses on a circle sized by the Cauchy bound
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1.0 + radius;
  if (std::abs(c[0]) > 0.0)
    radius = std::min(radius, 2.0 * std::pow(std::abs(c[0]), 1.0 / static_cast<double>(n)) + 0.5);
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 6.283185307179586 * static_cast<double>(k) / static_cast<double>(n) + 0.41;
    const double rk = radius * (1.0 + 0.05 * static_cast<double>(k % 7));
    z[k] = {rk * std::cos(th), rk * std::sin(th)};
  }

  std::vector<bool> done(n, false);
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [pv, scale] = eval_with_scale(c, z[k]);
      if (std::abs(pv) <= opt.tol * scale) { done[k] = true; continue; }
      all_done = false;
      const cplx dv = eval_deriv(c, z[k]);
      cplx w = (std::abs(dv) > 0.0) ? pv / dv : cplx(0.0);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const cplx diff = z[k] - z[j];
        if (std::abs(diff) > 1e-300) sum += 1.0 / diff;
      }
      cplx denom = 1.0 - w * sum;
      if (std::abs(denom) < 1e-12) denom = 1e-12;
      cplx step = w / denom;
      if (std::abs(dv) == 0.0) {
        // flat spot: nudge deterministically
        step = cplx(0.05, 0.03) * (1.0 + std::abs(z[k]));
      }
      z[k] -= step;
    }
    if (all_done) break;
  }
  require(it < opt.max_iter, errc::no_convergence, "Aberth iteration cap hit");

  // Newton polish (helps simple roots; harmless for clusters)
  for (std::size_t k = 0; k < n; ++k)
    for (int s = 0; s < 3; ++s) {
      const cplx dv = eval_deriv(c, z[k]);
      if (std::abs(dv) < 1e-300) break;
      auto [pv, scale] = eval_with_scale(c, z[k]);
      const cplx step = pv / dv;
      if (std::abs(step) > 0.1 * (1.0 + std::abs(z[k]))) break;
      z[k] -= step;
    }

  // merge clusters (union-find)
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(z[i] - z[j]);
      const double t = opt.cluster_tol * (1.0 + std::min(std::abs(z[i]), std::abs(z[j])));
      if (d < t) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);
  for (const auto& [rep, members] : clusters) {
    cplx mean = 0.0;
    for (auto m : members) mean += z[m];
    mean /= static_cast<double>(members.size());
    rs.roots.push_back(mean);
    rs.multiplicity.push_back(static_cast<int>(members.size()));
  }

  double worst = 0.0;
  for (const auto& r : rs.roots) {
    const double scale = std::max(1.0, std::pow(std::abs(r) + 1.0, static_cast<double>(n)));
    auto [pv, es] = eval_with_scale(c, r);
    (void)es;
    worst = std::max(worst, std::abs(pv) / scale);
  }
  rs.residual = worst;
  return rs;
}

HurwitzResult is_hurwitz_stable(const MultiPoly& p, double stability_band,
                                const RootOptions& opt) {
  const RootSet rs = find_roots(p, opt);
  HurwitzResult h;
  if (rs.roots.empty()) {
    h.stable = true;
    h.margin = -std::numeric_limits<double>::infinity();
    return h;
  }
  double margin = -std::numeric_limits<double>::infinity();
  cplx worst = rs.roots.front();
  for (const auto& r : rs.roots)
    if (r.imag() > margin) { margin = r.imag(); worst = r; }
  h.margin = margin;
  h.stable = margin < stability_band;
  h.boundary = std::abs(margin) <= stability_band;
  if (!h.stable) h.witness = worst;
  return h;
}

namespace {

struct RealRoots {
  std::vector<double> values;  // repeated by multiplicity, sorted
  bool all_real = true;
  double offender = 0.0;
};

RealRoots real_roots_of(const MultiPoly& p, double real_band, const RootOptions& opt) {
  RealRoots out;
  const auto coeffs = p.univariate_coeffs();
  double cmax = 0.0;
  for (const auto& x : coeffs) cmax = std::max(cmax, std::abs(x));
  if (cmax == 0.0) return out;  // zero polynomial: no roots, caller flags it
  bool constant = true;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > 1e-14 * cmax) constant = false;
  if (constant) return out;
  const RootSet rs = find_roots(coeffs, opt);
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const cplx r = rs.roots[i];
    if (std::abs(r.imag()) > real_band * (1.0 + std::abs(r))) {
      out.all_real = false;
      out.offender = r.real();
      return out;
    }
    out.values.insert(out.values.end(), static_cast<std::size_t>(rs.multiplicity[i]), r.real());
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

// chain a1 <= b1 <= a2 <= ... with tolerance; sets `weak` on coincidences
bool chain_ok(const std::vector<double>& a, const std::vector<double>& b, double tol,
              bool& weak, std::pair<double, double>& witness) {
  // expects a.size() == b.size() or a.size() == b.size()+1
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lo = a[i], hi = b[i];
    if (hi < lo - tol * (1.0 + std::abs(lo))) {
      witness = {std::min(lo, hi), std::max(lo, hi)};
      return false;
    }
    if (std::abs(hi - lo) <= tol * (1.0 + std::abs(lo))) weak = true;
    if (i + 1 < a.size()) {
      const double nxt = a[i + 1];
      if (nxt < hi - tol * (1.0 + std::abs(hi))) {
        witness = {std::min(hi, nxt), std::max(hi, nxt)};
        return false;
      }
      if (std::abs(nxt - hi) <= tol * (1.0 + std::abs(hi))) weak = true;
    }
  }
  return true;
}

}  // namespace

InterlacingVerdict real_rooted_and_interlace(const MultiPoly& r, const MultiPoly& q,
                                             double real_band, const RootOptions& opt) {
  require(r.max_imag_coeff() <= 1e-12 * std::max(r.coeff_scale(), 1e-300) &&
              q.max_imag_coeff() <= 1e-12 * std::max(q.coeff_scale(), 1e-300),
          errc::not_real_coefficient, "interlacing requires real coefficients");

  InterlacingVerdict v;
  const RealRoots ra = real_roots_of(r, real_band, opt);
  const RealRoots rb = real_roots_of(q, real_band, opt);
  if (!ra.all_real || !rb.all_real) {
    v.verdict = Interlace::fails;
    const double w = ra.all_real ? rb.offender : ra.offender;
    v.witness = {w, w};
    return v;
  }
  if (ra.values.empty() || rb.values.empty()) {
    v.degenerate = true;  // degree <= 0 on one side: vacuous alternation
    return v;
  }
  const auto& big = ra.values.size() >= rb.values.size() ? ra.values : rb.values;
  const auto& small = ra.values.size() >= rb.values.size() ? rb.values : ra.values;
  if (big.size() - small.size() > 1) {
    v.verdict = Interlace::fails;
    v.witness = {big.front(), big.back()};
    return v;
  }
  const double tol = opt.cluster_tol;
  bool weak = false;
  std::pair<double, double> wit{0.0, 0.0};
  if (big.size() == small.size() + 1) {
    if (!chain_ok(big, small, tol, weak, wit)) {
      v.verdict = Interlace::fails;
      v.witness = wit;
      return v;
    }
  } else {
    // equal counts: either ordering may interlace
    bool weak1 = false, weak2 = false;
    std::pair<double, double> w1, w2;
    const bool ok1 = chain_ok(big, small, tol, weak1, w1);
    const bool ok2 = chain_ok(small, big, tol, weak2, w2);
    if (!ok1 && !ok2) {
      v.verdict = Interlace::fails;
      v.witness = w1;
      return v;
    }
    weak = ok1 ? weak1 : weak2;
  }
  v.verdict = weak ? Interlace::weak : Interlace::strict;
  return v;
}

}  // namespace tubestab
