// Serial-vs-OpenMP comparison for the data-parallel sample sweeps.
#include <chrono>
#include <cstdio>
#include <string>

#include "tubestab/detrep.hpp"
#include "tubestab/rng.hpp"

using namespace tubestab;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

CMatrix rand_contraction(Rng& rng, std::size_t n, double norm) {
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.cnormal();
  const double s = op_norm(g);
  return g * cplx(norm / (s > 0 ? s : 1.0));
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t samples = 20000;
  if (argc > 1) samples = std::stoull(argv[1]);
  Rng rng(1234);

  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    CMatrix k = rand_contraction(rng, 8, 0.85);
    auto b = polydisk_rep_from_contraction(k, {3, 3, 2});
    DomainSpec pd;
    pd.kind = DomainSpec::Kind::polydisk;
    pd.dim = 3;
    double s = 0, p = 0, ms = 0, mp = 0;
    s = time_ms([&] {
      ms = pencil_nonvanishing(b.rep, pd, samples, 3, SampleRegion::interior, 1e-12,
                               Exec::serial)
               .min_abs;
    });
    p = time_ms([&] {
      mp = pencil_nonvanishing(b.rep, pd, samples, 3, SampleRegion::interior, 1e-12,
                               Exec::parallel)
               .min_abs;
    });
    if (ms != mp) std::printf("MISMATCH in polydisk sweep!\n");
    row("polydisk nonvanishing sweep", s, p);
  }
  {
    DomainSpec lb;
    lb.kind = DomainSpec::Kind::lie_ball;
    lb.dim = 5;
    SampleOptions so;
    double s, p;
    so.exec = Exec::serial;
    s = time_ms([&] { (void)sample(lb, samples / 2, 7, SampleRegion::interior, so); });
    so.exec = Exec::parallel;
    p = time_ms([&] { (void)sample(lb, samples / 2, 7, SampleRegion::interior, so); });
    row("lie ball sampler", s, p);
  }
  {
    CMatrix k = rand_contraction(rng, 6, 0.8);
    auto b = lieball_rep_from_contraction(k, 3, 2);
    double s, p;
    MultiPoly ps(3), pp(3);
    s = time_ms([&] { ps = extract_polynomial(b.rep, 300000, Exec::serial); });
    p = time_ms([&] { pp = extract_polynomial(b.rep, 300000, Exec::parallel); });
    if ((ps - pp).coeff_scale() != 0.0) std::printf("MISMATCH in extraction!\n");
    row("pencil determinant extraction", s, p);
  }
  {
    CMatrix k = rand_contraction(rng, 6, 0.85);
    auto b = cayley_push_halfplane(k, {3, 3});
    VerifyOptions vo;
    vo.samples = samples / 4;
    const MultiPoly one = MultiPoly::constant(2, 1.0);
    double s, p, es, ep;
    vo.exec = Exec::serial;
    s = time_ms([&] { es = verify_rep(b.poly, one, b.rep, vo).identity_max_rel_err; });
    vo.exec = Exec::parallel;
    p = time_ms([&] { ep = verify_rep(b.poly, one, b.rep, vo).identity_max_rel_err; });
    if (es != ep) std::printf("MISMATCH in verification!\n");
    row("representation verification", s, p);
  }
  return 0;
}
