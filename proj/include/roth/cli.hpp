#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roth {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitInconsistent = 2 };

/// Runs one command line (without the program name). Results go to `out`
/// unless `--out` names a file; diagnostics go to `err`.
int run_command(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace roth
