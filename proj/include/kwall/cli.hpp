#pragma once

#include <string>
#include <vector>

namespace kwall::cli {

// Entry point shared by the binary and the tests. Returns the process exit
// code: 0 success, 1 mathematical refusal (machine-readable error report on
// stdout), 2 usage/parse/io errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwall::cli
