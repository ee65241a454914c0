#pragma once

#include <ostream>

namespace tqf::cli {

/// Exit codes of run().
enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

/// Runs one command line (argv[0] is the program name). Results go to out,
/// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tqf::cli
