#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetforge::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Runs one command line (without the program name). Input documents come
/// from the named file or from `in` when the file is absent or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace jetforge::cli
