#ifndef TUBESTAB_CLI_HPP
#define TUBESTAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tubestab {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes: 0 pass/success, 1 falsified or verification failure,
// 2 usage/schema error.  Machine output goes to `out`, diagnostics and the
// run manifest go to `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubestab

#endif
