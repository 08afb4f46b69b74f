#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jtree::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2, kNoConvergence = 3 };

/// Runs the command line `args` (without the program name). Reports go to `out` unless
/// --out names a file; `in` serves input path "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace jtree::cli
