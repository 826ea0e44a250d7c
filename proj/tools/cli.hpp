#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torloop::cli {

/// Runs one torloop command line. Returns 0 (pass), 1 (a verification failed) or 2 (bad input).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torloop::cli
