#ifndef MTC_TOOLS_CLI_HPP
#define MTC_TOOLS_CLI_HPP

#include <ostream>

namespace mtc::cli {

enum ExitCode { ok = 0, failure = 1, usage = 2, io = 3, threshold = 4 };

// Entry point of the mtc command; stdout content goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtc::cli

#endif
