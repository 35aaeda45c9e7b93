#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexreg::cli {

// Runs `convexreg <args...>` and returns the process exit code. Failures
// print one line "error: <category>: <kind>: <message>" to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace convexreg::cli
