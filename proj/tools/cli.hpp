#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace luinv::cli {

/// Runs one command line (without the program name).
/// Exit codes: 0 success, 1 computational failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace luinv::cli
