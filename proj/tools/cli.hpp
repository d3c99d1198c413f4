#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expandlab::cli {

/// Runs one command (args exclude the program name). Returns the exit code:
/// 0 success, 1 an exact bound failed or a command error, 2 bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expandlab::cli
