#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omorse::cli {

// Runs one command line (args[0] is the program name). Returns the process
// exit code: 0 ok, 1 input, 2 theorem violation, 3 limit exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omorse::cli
