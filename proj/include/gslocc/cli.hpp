#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gslocc::cli {

/// Runs one command-line invocation (args excludes the program name).
/// Returns the process exit code: 0 when the command answered (including
/// unphysical and not-transformable verdicts), 2 on invalid invocation.
/// Results go to `out` unless --out names a file; diagnostics and timing go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Merges a JSON config file named by --config into the argument list.
/// Keys are long flag names without dashes; flags already present win. A
/// "command" key supplies the subcommand when none is given.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

}  // namespace gslocc::cli
