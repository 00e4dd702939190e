#pragma once

#include <map>
#include <string>
#include <vector>

namespace lpm::cli {

/// A parsed command line: the subcommand name plus its validated flag values.
/// "--help" parses to the pseudo-command "help" with the text to print.
struct CliCommand {
  std::string name;
  std::map<std::string, std::string> flags;
};

/// Strict parsing; unknown flags or malformed values raise lpm::UsageError.
CliCommand parse_args(const std::vector<std::string>& args);

/// Executes a parsed command. Returns 0 on success, 2 on numerical failure.
int run(const CliCommand& cmd);

/// parse + run with exit-code mapping: usage errors return 1.
int run_cli(const std::vector<std::string>& args);

}  // namespace lpm::cli
