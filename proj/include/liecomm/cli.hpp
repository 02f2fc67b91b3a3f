#pragma once

#include <iosfwd>

namespace liecomm::cli {

/// Exit codes of the command-line front end.
enum Exit : int {
  kOk = 0,
  kMalformedInput = 1,
  kSolverError = 2,
  kVerificationFailed = 3,
};

/// Entry point of the `liecomm` tool: subcommands decompose, verify,
/// orth-torus and measure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace liecomm::cli
