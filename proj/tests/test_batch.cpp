#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "tubestab/detrep.hpp"
#include "tubestab/suites.hpp"

using namespace tubestab;

// The parallel path must agree bit-for-bit with the serial reference: sample
// streams are indexed per item and the reductions are order independent.

TEST_CASE("parallel min reduction matches the serial reference exactly") {
  Rng rng(401);
  CMatrix k = tubestab::testing::rand_contraction(rng, 5, 0.85);
  auto b = polydisk_rep_from_contraction(k, {3, 2});
  DomainSpec pd;
  pd.kind = DomainSpec::Kind::polydisk;
  pd.dim = 2;
  auto serial = pencil_nonvanishing(b.rep, pd, 20000, 9, SampleRegion::interior, 1e-12,
                                    Exec::serial);
  auto parallel = pencil_nonvanishing(b.rep, pd, 20000, 9, SampleRegion::interior, 1e-12,
                                      Exec::parallel);
  CHECK(serial.min_abs == parallel.min_abs);
}

TEST_CASE("grid evaluation is scheduling independent") {
  Rng rng(409);
  CMatrix k = tubestab::testing::rand_contraction(rng, 4, 0.8);
  auto b = cayley_push_halfplane(k, {2, 2});
  MultiPoly serial = extract_polynomial(b.rep, 300000, Exec::serial);
  MultiPoly parallel = extract_polynomial(b.rep, 300000, Exec::parallel);
  MultiPoly diff = serial - parallel;
  CHECK(diff.coeff_scale() == 0.0);
}

TEST_CASE("verify_rep agrees across execution modes") {
  Rng rng(419);
  CMatrix k = tubestab::testing::rand_contraction(rng, 4, 0.8);
  auto b = cayley_push_halfplane(k, {2, 2});
  VerifyOptions vs;
  vs.exec = Exec::serial;
  vs.samples = 300;
  VerifyOptions vp = vs;
  vp.exec = Exec::parallel;
  const MultiPoly one = MultiPoly::constant(2, 1.0);
  auto a = verify_rep(b.poly, one, b.rep, vs);
  auto c = verify_rep(b.poly, one, b.rep, vp);
  CHECK(a.identity_max_rel_err == c.identity_max_rel_err);
  CHECK(a.verdict == c.verdict);
}

TEST_CASE("suite results are reproducible for a fixed seed") {
  SuiteConfig cfg;
  cfg.seed = 77;
  cfg.roundtrip_samples = 200;
  cfg.exec = Exec::serial;
  SuiteConfig par = cfg;
  par.exec = Exec::parallel;
  auto a = run_suite_clifford(cfg);
  auto b = run_suite_clifford(par);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].value == b.checks[i].value);
    CHECK(a.checks[i].pass == b.checks[i].pass);
  }
}
