#include "tubestab/domains.hpp"

#include <algorithm>
#include <cmath>

namespace tubestab {

namespace {

MembershipReport make_report(double margin, std::string method) {
  MembershipReport r;
  r.margin = margin;
  r.inside = margin > kMarginTol;
  r.boundary = std::abs(margin) <= kMarginTol;
  r.method = std::move(method);
  return r;
}

CMatrix matrix_from_point(std::span<const cplx> p, std::size_t l, bool symmetric) {
  CMatrix m(l, l);
  std::size_t idx = 0;
  if (symmetric) {
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = i; j < l; ++j) {
        m(i, j) = p[idx];
        m(j, i) = p[idx];
        ++idx;
      }
  } else {
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) m(i, j) = p[idx++];
  }
  require(idx == p.size(), errc::dim_mismatch, "matrix point size");
  return m;
}

}  // namespace

std::size_t DomainSpec::point_size() const {
  switch (kind) {
    case Kind::polydisk:
    case Kind::halfplane_tube:
    case Kind::lie_ball:
    case Kind::lorentz_cone:
    case Kind::lorentz_tube: return static_cast<std::size_t>(dim);
    case Kind::matrix_uhp: return static_cast<std::size_t>(dim) * dim;
    case Kind::siegel_uhp: return static_cast<std::size_t>(dim) * (dim + 1) / 2;
    case Kind::skew_domain: return static_cast<std::size_t>(dim) * (2 * dim - 1);
    case Kind::cartan_product: {
      std::size_t s = 0;
      for (const auto& b : factors)
        s += b.symmetric ? static_cast<std::size_t>(b.size) * (b.size + 1) / 2
                         : static_cast<std::size_t>(b.size) * b.size;
      return s;
    }
    case Kind::bounded_exceptional27:
    case Kind::exceptional_tube27: return 27;
  }
  return 0;
}

const char* DomainSpec::kind_name(Kind k) {
  switch (k) {
    case Kind::polydisk: return "polydisk";
    case Kind::halfplane_tube: return "halfplane_tube";
    case Kind::lie_ball: return "lie_ball";
    case Kind::lorentz_cone: return "lorentz_cone";
    case Kind::lorentz_tube: return "lorentz_tube";
    case Kind::matrix_uhp: return "matrix_uhp";
    case Kind::siegel_uhp: return "siegel_uhp";
    case Kind::skew_domain: return "skew_domain";
    case Kind::cartan_product: return "cartan_product";
    case Kind::bounded_exceptional27: return "bounded_exceptional27";
    case Kind::exceptional_tube27: return "exceptional_tube27";
  }
  return "?";
}

MembershipReport in_polydisk(std::span<const cplx> z) {
  double worst = 1.0;
  for (const auto& x : z) worst = std::min(worst, 1.0 - std::abs(x));
  return make_report(worst, "max |z_j| < 1");
}

MembershipReport in_halfplane_tube(std::span<const cplx> z) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& x : z) worst = std::min(worst, x.imag());
  return make_report(worst, "min Im z_j > 0");
}

MembershipReport in_lorentz_cone(std::span<const double> x) {
  require(x.size() >= 2, errc::dim_mismatch, "lorentz cone needs n >= 2");
  double s = x[0] * x[0];
  for (std::size_t j = 1; j < x.size(); ++j) s -= x[j] * x[j];
  return make_report(std::min(x[0], s), "x1 > 0 and x1^2 - sum x_j^2 > 0");
}

MembershipReport in_lorentz_tube(std::span<const cplx> w, const NumTol& tol) {
  const CMatrix im = imag_part(build_W(w));
  return make_report(min_eig_herm(im, tol), "Im W(w) > 0");
}

MembershipReport in_lie_ball(std::span<const cplx> z, LieBallMethod method, const NumTol& tol) {
  switch (method) {
    case LieBallMethod::eig_formula: {
      double nz = 0.0;
      cplx sq = 0.0;
      for (const auto& x : z) {
        nz += std::norm(x);
        sq += x * x;
      }
      const double disc = std::max(nz * nz - std::norm(sq), 0.0);
      return make_report(1.0 - (nz + std::sqrt(disc)), "eig formula");
    }
    case LieBallMethod::M_matrix: {
      const CMatrix m = build_M(z);
      const CMatrix gap = CMatrix::identity(z.size()) - m;
      return make_report(min_eig_herm(gap, tol), "M(z) < I");
    }
    case LieBallMethod::Q_contraction:
      return make_report(1.0 - op_norm(build_Q(z)), "||Q(z)|| < 1");
    case LieBallMethod::Ppm_pencil: {
      require(std::abs(1.0 - z[0]) > 1e-12, errc::pole_at_one, "P_- route pole at z1 = 1");
      const auto [pp, pm] = build_Ppm(z);
      const CMatrix gram = pp.adjoint() * pp - pm.adjoint() * pm;
      return make_report(min_eig_herm(gram, tol), "P+*P+ - P-*P- > 0");
    }
  }
  fail(errc::schema_error, "unknown lie ball method");
}

MembershipReport in_matrix_uhp(const CMatrix& z, bool symmetric, const NumTol& tol) {
  require(z.square(), errc::dim_mismatch, "matrix UHP point must be square");
  if (symmetric) {
    const double asym = z.dist_max(z.transpose());
    require(asym <= 1e-10 * std::max(z.norm_max(), 1.0), errc::not_symmetric,
            "Siegel point must be symmetric");
  }
  return make_report(min_eig_herm(imag_part(z), tol), "Im Z > 0");
}

MembershipReport in_skew_domain(const CMatrix& w, const NumTol& tol) {
  require(w.square() && w.rows() % 2 == 0, errc::dim_mismatch, "skew point must be 2n x 2n");
  const double asym = w.dist_max(w.transpose() * cplx(-1.0));
  require(asym <= 1e-10 * std::max(w.norm_max(), 1.0), errc::not_skew,
          "point must be skew-symmetric");
  const CMatrix j = skew_J(w.rows() / 2);
  return make_report(min_eig_herm(imag_part(j * w), tol), "Im JW > 0");
}

MembershipReport in_exceptional_bounded(std::span<const cplx> zeta) {
  return make_report(1.0 - op_norm(build_X_zeta(zeta)), "||X(zeta)|| < 1");
}

MembershipReport in_exceptional_tube(const CMatrix& w17, const NumTol& tol) {
  const TubePattern p = read_tube_pattern(w17);
  require(p.residual <= 1e-10 * std::max(w17.norm_max(), 1.0), errc::pattern_violation,
          "matrix does not carry the 17x17 tube pattern");
  return make_report(min_eig_herm(imag_part(w17), tol), "Im W > 0 (patterned)");
}

MembershipReport membership(const DomainSpec& spec, std::span<const cplx> point,
                            const NumTol& tol) {
  require(point.size() == spec.point_size(), errc::dim_mismatch, "point size");
  using K = DomainSpec::Kind;
  switch (spec.kind) {
    case K::polydisk: return in_polydisk(point);
    case K::halfplane_tube: return in_halfplane_tube(point);
    case K::lie_ball: return in_lie_ball(point, LieBallMethod::eig_formula, tol);
    case K::lorentz_cone: {
      std::vector<double> x(point.size());
      for (std::size_t i = 0; i < point.size(); ++i) x[i] = point[i].real();
      return in_lorentz_cone(x);
    }
    case K::lorentz_tube: return in_lorentz_tube(point, tol);
    case K::matrix_uhp:
      return in_matrix_uhp(matrix_from_point(point, static_cast<std::size_t>(spec.dim), false),
                           false, tol);
    case K::siegel_uhp:
      return in_matrix_uhp(matrix_from_point(point, static_cast<std::size_t>(spec.dim), true),
                           true, tol);
    case K::skew_domain:
      return in_skew_domain(skew_from_vars(spec.dim, point), tol);
    case K::cartan_product: {
      double worst = std::numeric_limits<double>::infinity();
      std::size_t idx = 0;
      for (const auto& b : spec.factors) {
        const std::size_t len = b.symmetric
                                    ? static_cast<std::size_t>(b.size) * (b.size + 1) / 2
                                    : static_cast<std::size_t>(b.size) * b.size;
        const CMatrix m =
            matrix_from_point(point.subspan(idx, len), static_cast<std::size_t>(b.size),
                              b.symmetric);
        worst = std::min(worst, in_matrix_uhp(m, b.symmetric, tol).margin);
        idx += len;
      }
      return make_report(worst, "Im Z_q > 0 per factor");
    }
    case K::bounded_exceptional27: return in_exceptional_bounded(point);
    case K::exceptional_tube27: return in_exceptional_tube(build_Omega(point)[0], tol);
  }
  fail(errc::schema_error, "unknown domain kind");
}

namespace {

// one raw candidate draw per kind; margins are then filtered by the caller
std::vector<cplx> draw_candidate(const DomainSpec& spec, Rng& rng) {
  using K = DomainSpec::Kind;
  const std::size_t d = static_cast<std::size_t>(spec.dim);
  switch (spec.kind) {
    case K::polydisk: {
      std::vector<cplx> z(d);
      for (auto& x : z) x = 0.97 * rng.unit_disc();
      return z;
    }
    case K::halfplane_tube: {
      std::vector<cplx> z(d);
      for (auto& x : z) x = {rng.uniform(-3.0, 3.0), rng.uniform(0.01, 2.5)};
      return z;
    }
    case K::lie_ball: {
      std::vector<cplx> z(d);
      const double s = rng.uniform(0.05, 0.75) / std::sqrt(static_cast<double>(d));
      for (auto& x : z) x = s * rng.cnormal();
      return z;
    }
    case K::lorentz_cone: {
      std::vector<cplx> x(d);
      const double x1 = rng.uniform(0.2, 3.0);
      x[0] = x1;
      const double r = rng.uniform(0.0, 0.95) * x1 / std::sqrt(static_cast<double>(d - 1));
      for (std::size_t j = 1; j < d; ++j) x[j] = r * rng.uniform(-1.0, 1.0);
      return x;
    }
    case K::lorentz_tube: {
      DomainSpec cone = spec;
      cone.kind = K::lorentz_cone;
      auto im = draw_candidate(cone, rng);
      std::vector<cplx> w(d);
      for (std::size_t j = 0; j < d; ++j) w[j] = {rng.uniform(-3.0, 3.0), im[j].real()};
      return w;
    }
    case K::matrix_uhp:
    case K::siegel_uhp: {
      const bool sym = spec.kind == K::siegel_uhp;
      CMatrix re(d, d), im(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          re(i, j) = sym ? cplx(rng.normal()) : rng.cnormal();
          im(i, j) = sym ? cplx(rng.normal()) : rng.cnormal();
        }
      // hermitian (or real symmetric) real part, PD imaginary part
      CMatrix h = sym ? (re + re.transpose()) * cplx(0.5) : real_part(re);
      CMatrix g = sym ? (im + im.transpose()) * cplx(0.5) : real_part(im);
      CMatrix pd = g * g.adjoint() * cplx(0.25);
      const double shift = rng.uniform(0.05, 0.8);
      for (std::size_t i = 0; i < d; ++i) pd(i, i) += shift;
      std::vector<cplx> p;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = sym ? i : 0; j < d; ++j)
          p.push_back(h(i, j) + cplx(0.0, 1.0) * pd(i, j));
      return p;
    }
    case K::skew_domain: {
      // psi-image of a random skew strict contraction
      const std::size_t m = 2 * d;
      CMatrix g(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = rng.cnormal();
      CMatrix z = (g - g.transpose()) * cplx(0.5);
      const double nrm = op_norm(z);
      if (nrm > 0.0) z *= cplx(rng.uniform(0.1, 0.9) / nrm);
      const CMatrix w = psi(z);
      std::vector<cplx> p;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) p.push_back(w(i, j));
      return p;
    }
    case K::cartan_product: {
      std::vector<cplx> p;
      for (const auto& b : spec.factors) {
        DomainSpec f;
        f.kind = b.symmetric ? K::siegel_uhp : K::matrix_uhp;
        f.dim = b.size;
        auto sub = draw_candidate(f, rng);
        p.insert(p.end(), sub.begin(), sub.end());
      }
      return p;
    }
    case K::bounded_exceptional27: {
      std::vector<cplx> zeta(27);
      const double s = rng.uniform(0.02, 0.16);
      for (auto& x : zeta) x = s * rng.cnormal();
      return zeta;
    }
    case K::exceptional_tube27: {
      std::vector<cplx> w(27);
      const double vs = rng.uniform(0.02, 0.22);
      for (std::size_t j = 0; j < 27; ++j)
        w[j] = {rng.uniform(-1.0, 1.0), vs * rng.normal()};
      w[0] = {w[0].real(), rng.uniform(0.5, 2.0)};
      w[17] = {w[17].real(), rng.uniform(0.5, 2.0)};
      w[26] = {w[26].real(), rng.uniform(0.5, 2.0)};
      return w;
    }
  }
  fail(errc::schema_error, "unknown domain kind");
}

std::vector<cplx> draw_interior(const DomainSpec& spec, Rng& rng, const SampleOptions& opt,
                                const NumTol& tol) {
  for (int tries = 0; tries < opt.max_rejects; ++tries) {
    auto p = draw_candidate(spec, rng);
    if (membership(spec, p, tol).margin >= opt.margin_floor) return p;
  }
  fail(errc::no_convergence, "interior sampler rejection cap hit");
}

// walk from an interior point toward the boundary along a random direction
// until the margin lands in (0, boundary_band]
std::vector<cplx> draw_near_boundary(const DomainSpec& spec, Rng& rng, const SampleOptions& opt,
                                     const NumTol& tol) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    auto base = draw_interior(spec, rng, opt, tol);
    std::vector<cplx> dir(base.size());
    if (spec.kind == DomainSpec::Kind::lorentz_cone) {
      for (auto& x : dir) x = rng.normal();  // stay real
    } else {
      for (auto& x : dir) x = rng.cnormal();
    }
    auto at = [&](double t) {
      std::vector<cplx> p(base.size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = base[i] + t * dir[i];
      return p;
    };
    // bracket a crossing
    double lo = 0.0, hi = 1.0;
    bool bracketed = false;
    for (int k = 0; k < 14; ++k) {
      double m;
      try {
        m = membership(spec, at(hi), tol).margin;
      } catch (const Error&) {
        m = -1.0;  // pole / pattern break counts as outside
      }
      if (m <= 0.0) { bracketed = true; break; }
      lo = hi;
      hi *= 2.0;
    }
    if (!bracketed) continue;
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      double m;
      try {
        m = membership(spec, at(mid), tol).margin;
      } catch (const Error&) {
        m = -1.0;
      }
      if (m > 0.0) lo = mid; else hi = mid;
      const double mlo = membership(spec, at(lo), tol).margin;
      if (mlo > kMarginTol * 10.0 && mlo <= opt.boundary_band) return at(lo);
    }
  }
  fail(errc::no_convergence, "near-boundary sampler failed to bracket");
}

}  // namespace

std::vector<std::vector<cplx>> sample(const DomainSpec& spec, std::size_t count,
                                      std::uint64_t seed, SampleRegion where,
                                      const SampleOptions& opt) {
  std::vector<std::vector<cplx>> out(count);
  const Rng root(seed);
  const NumTol tol;
  batch_for(count, opt.exec, [&](std::size_t i) {
    Rng rng = root.split(i);
    out[i] = (where == SampleRegion::interior) ? draw_interior(spec, rng, opt, tol)
                                               : draw_near_boundary(spec, rng, opt, tol);
  });
  return out;
}

}  // namespace tubestab
