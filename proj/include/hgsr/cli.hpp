#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgsr::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kValidationError = 3,
  kRuntimeError = 4,
};

/// Runs `hgsr <subcommand> ...` with args excluding the program name.
/// Subcommands: inspect, recover, sweep, verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hgsr::cli
