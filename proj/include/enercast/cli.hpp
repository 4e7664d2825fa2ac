#ifndef ENERCAST_CLI_HPP
#define ENERCAST_CLI_HPP

#include <string>
#include <vector>

namespace enercast::cli {

/// Runs one CLI command (argv without the program name) and returns the
/// process exit code: 0 success, 2 usage error, 3 data error,
/// 4 training divergence, 1 internal error. Every failing run prints a
/// single machine-parsable "error: <category>: <message>" line to
/// stderr; every successful run writes its outputs atomically together
/// with a manifest that reproduces the run.
int run(const std::vector<std::string>& args);

} // namespace enercast::cli

#endif // ENERCAST_CLI_HPP
