#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dkit::cli {

/// Entry point of the dkit tool. `args` excludes the program name. Writes the
/// JSON report to `out` and diagnostics to `err`; returns the exit code
/// (0 ok, 1 violation or counterexample, 2 input error, 3 numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dkit::cli
