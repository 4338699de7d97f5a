#pragma once

#include <iosfwd>

namespace gsplit {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitUnsupported = 3, kExitCap = 4 };

/// Entry point of the `gsplit` command; writes to the given streams instead
/// of the process streams so it can be driven from tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsplit
