#pragma once

#include <string>
#include <vector>

#include "henon/report.hpp"

namespace henon::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failure = 1,
  exit_solver_failure = 2,
  exit_usage_error = 3,
};

/// Parses argv into a validated RunConfig; throws CLI11 parse errors wrapped
/// as std::invalid_argument naming the offending flag.
RunConfig parse_cli(const std::vector<std::string>& args);

/// Full front end: parse, dispatch, emit.  Returns an ExitCode.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace henon::cli
