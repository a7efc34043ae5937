#pragma once

namespace nschsim {

/// Command-line front door. Subcommands: simulate, steady, verify, sweep,
/// degiorgi. Exit codes: 0 success, 1 validation error, 2 solver failure,
/// 3 verification failure. Diagnostics go to stderr, data to files/stdout.
int run_cli(int argc, const char* const* argv);

}  // namespace nschsim
