#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bhcycle::cli {

enum ExitCode : int { ok = 0, usage = 2, invalid = 3, construction_failed = 4 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhcycle::cli
