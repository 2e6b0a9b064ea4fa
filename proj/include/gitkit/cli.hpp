#ifndef GITKIT_CLI_HPP
#define GITKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gitkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUndecided = 2;

/// Runs one gitkit invocation. `args` excludes the program name. Reports go
/// to `out` (or the --output file), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* tool_version();

}  // namespace gitkit::cli

#endif
