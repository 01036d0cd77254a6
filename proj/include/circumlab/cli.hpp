#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "circumlab/errors.hpp"

namespace circumlab {

/// 0 success, 1 audit failure, 2 usage, 3 degenerate input, 4 numerical failure.
int exit_code(ErrorClass cls);

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circumlab
