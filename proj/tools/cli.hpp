#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incidence::cli {

enum ExitCode : int { ok = 0, verification_failure = 1, usage_error = 2, internal_error = 3 };

/// Runs `incidence_lab <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace incidence::cli
