#ifndef TUBESTAB_SUITES_HPP
#define TUBESTAB_SUITES_HPP

#include <string>

#include "tubestab/detrep.hpp"

namespace tubestab {

// Identity suites aggregating the library's cross-checks; the CLI exposes
// them and the acceptance harness reuses them at pinned sample counts.

struct SuiteCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured error / agreement count
  double tol = 0.0;    // documented tolerance (0 = exact)
  std::size_t samples = 0;
};

struct SuiteResult {
  std::string name;
  std::vector<SuiteCheck> checks;
  bool pass = false;
  double wall_ms = 0.0;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t t27_samples = 1000;
  std::size_t lieball_samples = 10000;  // per dimension n in {2..6}
  std::size_t roundtrip_samples = 1000;
  std::size_t chain_points = 1000;
  Exec exec = Exec::parallel;
};

SuiteResult run_suite_clifford(const SuiteConfig& cfg);
SuiteResult run_suite_t27(const SuiteConfig& cfg);
SuiteResult run_suite_lieball(const SuiteConfig& cfg);
SuiteResult run_suite_roundtrips(const SuiteConfig& cfg);
SuiteResult run_suite_proofchains(const SuiteConfig& cfg);

// names: clifford | t27 | lieball | roundtrips | proofchains | all
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteConfig& cfg);

}  // namespace tubestab

#endif
