#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gckit::cli {

// Runs one invocation; args exclude the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gckit::cli
