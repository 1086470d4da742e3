#ifndef QLAB_TOOLS_CLI_HPP
#define QLAB_TOOLS_CLI_HPP

namespace qlab::cli {

/// Entry point of the qlab command-line tool.
/// Exit codes: 0 success, 1 reproduction-suite failure, 2 usage error,
/// 3 numerical error.
int run(int argc, const char* const* argv);

}  // namespace qlab::cli

#endif
