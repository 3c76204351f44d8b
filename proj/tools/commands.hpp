#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fptlat::cli {

enum ExitCode : int {
  kOptimal = 0,
  kError = 1,
  kNoOptimum = 2,  // infeasible or unbounded
  kUnsupported = 3,
};

/// Runs `fptlat <args...>` (args excludes the program name). Machine output
/// goes to `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fptlat::cli
