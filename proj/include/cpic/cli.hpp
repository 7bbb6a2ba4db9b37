#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cpic {

enum ExitCode : int { exit_ok = 0, exit_rejected = 1, exit_usage = 2, exit_integrity = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpic
