#ifndef MAGVAC_CLI_COMMANDS_HPP
#define MAGVAC_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace magvac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation or check failed
inline constexpr int kExitUsage = 2;    // bad flags or config

/// Runs one invocation; `args` excludes the program name. Payload goes to
/// `out`, diagnostics and the timestamped metadata line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace magvac::cli

#endif
