#ifndef TUBESTAB_ERRORS_HPP
#define TUBESTAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tubestab {

// Stable machine-readable failure codes; the CLI maps schema/usage problems
// to exit code 2 and keeps everything else as computational failures.
enum class errc {
  dim_mismatch,
  not_hermitian,
  not_symmetric,
  not_skew,
  not_contraction,
  not_invertible,
  not_real_coefficient,
  no_convergence,
  singular_pencil,
  singular_block,
  ill_conditioned,
  zero_polynomial,
  degree_too_small,
  duplicate_nodes,
  pole,
  pole_at_one,
  pattern_violation,
  split_failure,
  weight_pole,
  normalization_failure,
  unknown_suite,
  schema_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace tubestab

#endif
