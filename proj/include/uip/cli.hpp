#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uip::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,          // derivable / model found / result printed
  kNegative = 1,    // not derivable / no countermodel
  kParseError = 2,  // malformed formula, sequent or flags
  kInternal = 3,
};

/// Runs the tool on an argument vector (argv[0] included). `in` is read when
/// the input argument is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace uip::cli
