#pragma once

#include <iosfwd>

namespace tprep::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kIoFailure = 2;
inline constexpr int kConfigError = 3;

/// Entry point behind the `tprep` executable. Subcommands: validate,
/// reconstruct, map, radar, tables, budget, simcheck.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tprep::cli
