#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpd {

/// Runs one CLI invocation; `args` excludes the program name. JSON results
/// and error reports go to `out`, diagnostics to `err`. Returns the exit
/// code: 0 success, 1 validation failure, 2 usage error, 3 cap exceeded.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace gpd
