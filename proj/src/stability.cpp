#include "tubestab/stability.hpp"

#include <algorithm>
#include <cmath>

namespace tubestab {

namespace {

constexpr cplx kI(0.0, 1.0);

cplx ipow(cplx b, int e) {
  cplx acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= b;
  return acc;
}

// Newton refinement of |p| along one complex line through z0; returns the
// refined point when it converges to a near-zero inside the domain.
bool polish_witness(const MultiPoly& p, const DomainSpec& spec, std::vector<cplx> z0,
                    const std::vector<cplx>& dir, double abs_tol, std::vector<cplx>& out,
                    double& out_abs, double& out_margin) {
  const std::size_t d = z0.size();
  cplx t = 0.0;
  for (int it = 0; it < 60; ++it) {
    std::vector<cplx> z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = z0[j] + t * dir[j];
    const cplx f = p.eval(z);
    if (std::abs(f) <= abs_tol) {
      double margin;
      try {
        margin = membership(spec, z).margin;
      } catch (const Error&) {
        return false;
      }
      if (margin > kMarginTol) {
        out = z;
        out_abs = std::abs(f);
        out_margin = margin;
        return true;
      }
      return false;
    }
    // directional derivative by central difference
    const double h = 1e-6 * (1.0 + std::abs(t));
    std::vector<cplx> zp(d), zm(d);
    for (std::size_t j = 0; j < d; ++j) {
      zp[j] = z[j] + h * dir[j];
      zm[j] = z[j] - h * dir[j];
    }
    const cplx df = (p.eval(zp) - p.eval(zm)) / (2.0 * h);
    if (std::abs(df) < 1e-14) return false;
    const cplx step = f / df;
    if (std::abs(step) > 2.0) return false;  // running away
    t -= step;
  }
  return false;
}

}  // namespace

StabilityReport sampled_stability(const MultiPoly& p, const DomainSpec& spec,
                                  std::uint64_t seed, const StabilityOptions& opt) {
  require(!p.is_zero(), errc::zero_polynomial, "stability of the zero polynomial");
  require(p.nvars() == spec.point_size(), errc::dim_mismatch,
          "polynomial variables must match the domain point size");
  StabilityReport rep;
  rep.seed = seed;

  SampleOptions sopt;
  sopt.exec = opt.exec;
  auto pts = sample(spec, opt.interior_samples, seed, SampleRegion::interior, sopt);
  {
    auto nb = sample(spec, opt.boundary_samples, seed ^ 0x9e37u, SampleRegion::near_boundary,
                     sopt);
    pts.insert(pts.end(), nb.begin(), nb.end());
  }
  const std::size_t total = pts.size();
  std::vector<double> vals(total);
  batch_for(total, opt.exec, [&](std::size_t i) { vals[i] = std::abs(p.eval(pts[i])); });

  const double scale = p.coeff_scale();
  const double falsify_abs = opt.falsify_tol * std::max(scale, 1e-300);
  double mn = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < total; ++i)
    if (vals[i] < mn) { mn = vals[i]; argmin = i; }
  rep.min_abs_over_samples = mn;
  rep.samples_used = total;

  auto report_witness = [&](const std::vector<cplx>& z, double av, double margin) {
    rep.verdict = StabilityReport::Verdict::falsified;
    rep.witness = z;
    rep.witness_abs = av;
    rep.witness_margin = margin;
  };

  if (mn <= falsify_abs) {
    const auto m = membership(spec, pts[argmin]);
    if (m.margin > kMarginTol) {
      report_witness(pts[argmin], mn, m.margin);
      return rep;
    }
  }

  if (opt.witness_polish) {
    // refine from the few smallest samples along coordinate and random lines
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    Rng rng(seed ^ 0xabcdefull);
    const std::size_t tries = std::min<std::size_t>(total, 8);
    for (std::size_t oi = 0; oi < tries; ++oi) {
      const auto& z0 = pts[order[oi]];
      std::vector<std::vector<cplx>> dirs;
      for (std::size_t j = 0; j < p.nvars(); ++j) {
        std::vector<cplx> e(p.nvars(), 0.0);
        e[j] = 1.0;
        dirs.push_back(e);
      }
      dirs.push_back(rng.cnormal_vec(p.nvars()));
      for (const auto& dir : dirs) {
        std::vector<cplx> w;
        double wa = 0.0, wm = 0.0;
        if (polish_witness(p, spec, z0, dir, falsify_abs, w, wa, wm)) {
          report_witness(w, wa, wm);
          return rep;
        }
      }
    }
  }

  rep.verdict = StabilityReport::Verdict::no_zero_found;
  return rep;
}

double weight_at(WeightKind kind, const DomainSpec& spec, const MultiDegree& deg,
                 std::span<const cplx> z) {
  switch (kind) {
    case WeightKind::halfplane_product: {
      double w = 1.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        w *= std::pow(std::abs(z[j] + kI), deg.per_var[j]);
      return w;
    }
    case WeightKind::cartan_det: {
      double w = 1.0;
      std::size_t idx = 0;
      for (const auto& b : spec.factors) {
        const std::size_t len = b.symmetric
                                    ? static_cast<std::size_t>(b.size) * (b.size + 1) / 2
                                    : static_cast<std::size_t>(b.size) * b.size;
        const auto mats = cartan_matrices_from_vars({{b.symmetric, b.size, 1}},
                                                    z.subspan(idx, len));
        // block total degree = sum of the per-variable degrees in the block
        int t = 0;
        for (std::size_t v = idx; v < idx + len; ++v) t += deg.per_var[v];
        const CMatrix wi = mats[0] + CMatrix::identity(mats[0].rows()) * kI;
        w *= std::pow(std::abs(determinant(wi)), t);
        idx += len;
      }
      return w;
    }
    case WeightKind::skew_det: {
      const int n = spec.dim;
      const CMatrix zz = skew_from_vars(n, z);
      const CMatrix j = skew_J(static_cast<std::size_t>(n));
      int t = 0;
      for (int dv : deg.per_var) t = std::max(t, dv);
      t = deg.total;
      return std::pow(std::abs(determinant(zz - kI * j)), t);
    }
    case WeightKind::lorentz2_rational:
    case WeightKind::lorentzn_rational: {
      cplx tail = 0.0;
      for (std::size_t j = 1; j < z.size(); ++j) tail += z[j] * z[j];
      const cplx den = (z[0] + kI) * (z[0] + kI) - tail;
      require(std::abs(den) > 1e-14, errc::weight_pole, "weight pole: (w1+i)^2 - sum w_j^2 = 0");
      cplx expr = (1.0 - (1.0 + z[0] * z[0] - tail) / den) * (1.0 - (1.0 + z[0] * z[0] - tail) / den);
      for (std::size_t j = 1; j < z.size(); ++j) {
        const cplx term = -2.0 * z[j] / den;
        expr += term * term;
      }
      int total = 0;
      for (int dv : deg.per_var) total += dv;
      require(std::abs(expr) > 1e-300, errc::weight_pole, "weight pole: zero base");
      return std::pow(std::abs(expr), -total);
    }
  }
  fail(errc::schema_error, "unknown weight kind");
}

StrictnessEstimate strictness_estimate(const MultiPoly& p, const DomainSpec& spec,
                                       WeightKind kind, std::uint64_t seed,
                                       const StrictnessOptions& opt) {
  require(p.nvars() == spec.point_size(), errc::dim_mismatch, "variable count");
  const MultiDegree deg = p.multidegree();
  SampleOptions sopt;
  sopt.exec = opt.exec;
  auto pts = sample(spec, opt.base_samples, seed, SampleRegion::interior, sopt);

  // far-field schedule: the infimum may be approached at infinity
  double far = 0.0;
  Rng rng(seed ^ 0x5eedull);
  for (double r : opt.radii) {
    far = std::max(far, r);
    for (std::size_t s = 0; s < opt.per_radius; ++s) {
      Rng local = rng.split(static_cast<std::uint64_t>(r * 1000.0) + s);
      auto base = sample(spec, 1, local.next_u64(), SampleRegion::interior, sopt).front();
      // scale the real parts out to radius r, keep the imaginary structure
      for (auto& x : base) x = {x.real() * r, x.imag() * std::sqrt(r)};
      try {
        if (membership(spec, base).margin > kMarginTol) pts.push_back(base);
      } catch (const Error&) {
        continue;
      }
    }
  }

  std::vector<double> ratio(pts.size(), std::numeric_limits<double>::infinity());
  batch_for(pts.size(), opt.exec, [&](std::size_t i) {
    try {
      const double w = weight_at(kind, spec, deg, pts[i]);
      if (w > 0.0) ratio[i] = std::abs(p.eval(pts[i])) / w;
    } catch (const Error&) {
      // weight pole: skip the sample
    }
  });
  StrictnessEstimate est;
  est.weight_kind = kind;
  est.samples_used = pts.size();
  est.far_field_radius = far;
  est.epsilon_hat = *std::min_element(ratio.begin(), ratio.end());
  return est;
}

EquivalenceReport prop_s3_equivalences(const MultiPoly& p, std::uint64_t seed, double eps_floor,
                                       std::size_t n_samples, Exec exec) {
  EquivalenceReport rep;
  const auto deg = p.multidegree();
  const std::size_t d = p.nvars();

  DomainSpec hp;
  hp.kind = DomainSpec::Kind::halfplane_tube;
  hp.dim = static_cast<int>(d);
  StrictnessOptions sopt;
  sopt.base_samples = n_samples;
  sopt.exec = exec;
  rep.weighted_min = strictness_estimate(p, hp, WeightKind::halfplane_product, seed, sopt)
                         .epsilon_hat;

  const MultiPoly ptilde = p.mobius_substitute(deg.per_var, MultiPoly::Mobius::disc_to_halfplane);
  DomainSpec pd;
  pd.kind = DomainSpec::Kind::polydisk;
  pd.dim = static_cast<int>(d);
  SampleOptions dopt;
  dopt.exec = exec;
  auto dpts = sample(pd, n_samples, seed ^ 0x77u, SampleRegion::interior, dopt);
  {
    auto nb = sample(pd, n_samples / 4 + 1, seed ^ 0x78u, SampleRegion::near_boundary, dopt);
    dpts.insert(dpts.end(), nb.begin(), nb.end());
  }
  rep.disc_min = batch_min(dpts.size(), exec,
                           [&](std::size_t i) { return std::abs(ptilde.eval(dpts[i])); });

  auto hpts = sample(hp, n_samples, seed ^ 0x79u, SampleRegion::interior, dopt);
  {
    auto nb = sample(hp, n_samples / 4 + 1, seed ^ 0x7au, SampleRegion::near_boundary, dopt);
    hpts.insert(hpts.end(), nb.begin(), nb.end());
  }
  rep.halfplane_min =
      batch_min(hpts.size(), exec, [&](std::size_t i) { return std::abs(p.eval(hpts[i])); });

  MultiPoly::Expo extreme(d);
  for (std::size_t j = 0; j < d; ++j) extreme[j] = deg.per_var[j];
  rep.extreme_coeff = std::abs(p.coeff(extreme));

  rep.holds_i = rep.weighted_min > eps_floor;
  rep.holds_ii = rep.disc_min > eps_floor;
  rep.holds_iii =
      rep.extreme_coeff > 1e-12 * std::max(p.coeff_scale(), 1e-300) && rep.halfplane_min > eps_floor;
  rep.consistent = (rep.holds_i == rep.holds_ii) && (rep.holds_ii == rep.holds_iii);
  return rep;
}

LineCheckReport theorem1_line_checks(const MultiPoly& p,
                                     const std::vector<std::vector<double>>& cone_samples,
                                     const std::vector<std::vector<double>>& x_samples,
                                     double stability_band) {
  LineCheckReport rep;
  const auto [r, q] = p.real_imag_split();
  const std::size_t d = p.nvars();
  for (const auto& y : cone_samples) {
    for (const auto& x : x_samples) {
      require(x.size() == d && y.size() == d, errc::dim_mismatch, "line direction length");
      ++rep.lines;
      const MultiPoly pl = p.line_restrict(x, y);
      if (pl.total_degree() < 1) continue;
      const auto hw = is_hurwitz_stable(pl, stability_band);
      if (!hw.stable) {
        ++rep.hurwitz_failures;
        if (rep.witness.empty() && hw.witness) {
          for (std::size_t j = 0; j < d; ++j) rep.witness.push_back(x[j] + *hw.witness * y[j]);
        }
        continue;
      }
      const MultiPoly rl = r.line_restrict(x, y);
      const MultiPoly ql = q.line_restrict(x, y);
      if (ql.is_zero() || rl.is_zero()) {
        ++rep.degenerate_lines;  // item (iii) short-circuits to one-sided real-rootedness
        continue;
      }
      const auto il = real_rooted_and_interlace(rl, ql);
      if (il.verdict == Interlace::fails) ++rep.interlace_failures;

      // sampled sign of Im(r/q) at interior points of the line tube
      for (double b : {0.3, 1.0, 3.0}) {
        for (double a : {-1.0, 0.4, 2.0}) {
          const cplx t(a, b);
          std::vector<cplx> z(d);
          for (std::size_t j = 0; j < d; ++j) z[j] = x[j] + t * y[j];
          const cplx rv = r.eval(z), qv = q.eval(z);
          if (std::abs(qv) < 1e-12 * std::max(1.0, std::abs(rv))) continue;
          const cplx ratio = rv / qv;
          if (ratio.imag() <= 0.0) {
            ++rep.im_ratio_failures;
            if (rep.witness.empty()) rep.witness = z;
          }
        }
      }
    }
  }
  rep.all_pass =
      rep.hurwitz_failures == 0 && rep.interlace_failures == 0 && rep.im_ratio_failures == 0;
  return rep;
}

NormalizationResult normalize_initial_form(const MultiPoly& pn, double tol) {
  NormalizationResult res;
  const double scale = pn.coeff_scale();
  if (pn.is_zero()) return res;

  // phase grid, then golden-section polish around the best bucket
  auto realness = [&](double theta) {
    const cplx c = std::polar(1.0, theta);
    double s = 0.0;
    for (const auto& [e, v] : pn.terms()) s += std::abs((c * v).real());
    return s;
  };
  double best_theta = 0.0, best = -1.0;
  for (int g = 0; g < 720; ++g) {
    const double theta = g * M_PI / 360.0;
    const double v = realness(theta);
    if (v > best) { best = v; best_theta = theta; }
  }
  double lo = best_theta - M_PI / 360.0, hi = best_theta + M_PI / 360.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 40; ++it) {
    const double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    if (realness(m1) < realness(m2)) lo = m1; else hi = m2;
  }
  best_theta = 0.5 * (lo + hi);
  // the objective is quadratically flat at its maximum, so the search only
  // locates the phase to sqrt(eps); snap to the exact phase of the largest
  // coefficient (the maximizer, mod pi) nearest the search result
  cplx vmax = 0.0;
  for (const auto& [e, v] : pn.terms())
    if (std::abs(v) > std::abs(vmax)) vmax = v;
  double snapped = -std::arg(vmax);
  while (snapped < best_theta - M_PI / 2.0) snapped += M_PI;
  while (snapped > best_theta + M_PI / 2.0) snapped -= M_PI;
  best_theta = snapped;
  res.c = std::polar(1.0, best_theta);
  double worst = 0.0;
  for (const auto& [e, v] : pn.terms()) worst = std::max(worst, std::abs((res.c * v).imag()));
  res.residual = worst / std::max(scale, 1e-300);
  require(res.residual <= tol, errc::normalization_failure,
          "no single phase makes the initial form real within tolerance");
  return res;
}

HyperbolicityReport initial_form_hyperbolicity(
    const MultiPoly& p, const std::vector<std::vector<double>>& cone_samples,
    const std::vector<std::vector<double>>& x_samples) {
  HyperbolicityReport rep;
  const MultiPoly pn = p.homogeneous_part(p.total_degree());
  const auto norm = normalize_initial_form(pn);
  rep.normalization = norm.c;
  const MultiPoly pn_real = pn.scaled(norm.c);
  for (const auto& y : cone_samples)
    for (const auto& x : x_samples) {
      ++rep.lines;
      const MultiPoly line = pn_real.line_restrict(x, y);
      if (line.total_degree() < 1) continue;
      auto [lr, lq] = line.real_imag_split();
      // drop numeric dust in the imaginary part before the real-rootedness check
      lq.prune(1e-9);
      bool ok = lq.is_zero() || lq.coeff_scale() <= 1e-9 * std::max(lr.coeff_scale(), 1e-300);
      if (ok) {
        const auto roots = find_roots(lr);
        for (const auto& rt : roots.roots)
          if (std::abs(rt.imag()) > 1e-6 * (1.0 + std::abs(rt))) ok = false;
      }
      if (!ok) {
        ++rep.failures;
        if (rep.witness_x.empty()) {
          rep.witness_x = x;
          rep.witness_y = y;
        }
      }
    }
  rep.all_pass = rep.failures == 0;
  return rep;
}

InterlaceLinesReport pn_qn1_interlacing(const MultiPoly& p,
                                        const std::vector<std::vector<double>>& cone_samples,
                                        const std::vector<std::vector<double>>& x_samples) {
  InterlaceLinesReport rep;
  const int n = p.total_degree();
  const MultiPoly pn = p.homogeneous_part(n);
  const auto norm = normalize_initial_form(pn);
  rep.normalization = norm.c;
  const MultiPoly normalized = p.scaled(norm.c);
  const auto [r, q] = normalized.real_imag_split();
  const MultiPoly pn_real = r.homogeneous_part(n);
  const MultiPoly qn1 = q.homogeneous_part(n - 1);
  for (const auto& y : cone_samples)
    for (const auto& x : x_samples) {
      ++rep.lines;
      const MultiPoly a = pn_real.line_restrict(x, y);
      const MultiPoly b = qn1.line_restrict(x, y);
      if (a.total_degree() < 1 || b.total_degree() < 1) {
        ++rep.degenerate;  // a rootless side makes interlacing vacuous
        continue;
      }
      const auto v = real_rooted_and_interlace(a, b);
      if (v.verdict == Interlace::fails) ++rep.failures;
    }
  rep.all_pass = rep.failures == 0;
  return rep;
}

}  // namespace tubestab
