#ifndef ZDCOLOR_CLI_HPP
#define ZDCOLOR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace zdcolor::cli {

/// Environment variable read for the default of --threads.
inline constexpr const char* kThreadsEnv = "ZDCOLOR_THREADS";

std::string version();

/// Exit codes: 0 success, 1 negative verdict (UNSAT, INFEASIBLE, not
/// frozen, ...), 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdcolor::cli

#endif  // ZDCOLOR_CLI_HPP
