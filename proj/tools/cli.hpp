#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stree::cli {

// Runs one command line (args exclude the program name). Returns the
// process exit status: 0 on success, 2 on a usage error, 1 on any data or
// runtime error. Diagnostics go to `err` only.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stree::cli
