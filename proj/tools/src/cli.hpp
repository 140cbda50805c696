#pragma once

#include <ostream>

namespace vmolab::cli {

/// Parses argv, runs one subcommand and returns the process exit status.
/// Diagnostics go to `err` as a single line; progress summaries go to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vmolab::cli
