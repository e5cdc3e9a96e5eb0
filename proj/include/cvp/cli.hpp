#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvp {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitSizeCap = 4;

// args excludes the program name. The result document goes to `out` only on
// completion, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvp
