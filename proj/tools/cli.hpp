#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the permbound command line; args excludes the program name.
/// Reports go to --out (or `out` when absent); the last line on `out` is a
/// one-line JSON summary.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permbound::cli
