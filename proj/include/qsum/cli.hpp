#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsum {

/// Runs one command line (without the program name). The JSON report goes to
/// `out`, diagnostics and trace events to `err`. Exit codes: 0 success or
/// verified, 1 violation, 2 usage or input error, 3 budget exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsum
