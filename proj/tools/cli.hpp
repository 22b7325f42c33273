#pragma once

// Command-line front end: coefficient tables, eigenvalue comparisons,
// wavefunction samples, excited-state flows, verification and raw oracle output.

#include <exception>
#include <ostream>

#include "swsh/verify.hpp"

namespace swsh::cli {

inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kVerificationFailure = 2;

/// Parses argv and runs one subcommand. Output without --out goes to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// VerificationError, SingularFlowError and NumericError map to 2; anything else to 1.
int exit_code_for(const std::exception& e);
int exit_code_for(const verify::Outcome& outcome);

}  // namespace swsh::cli
