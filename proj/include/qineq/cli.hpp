#pragma once

#include <iosfwd>

namespace qineq {

/// Entry point of the `qineq` tool. Returns the process exit code:
/// 0 success, 2 input or validation error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qineq
