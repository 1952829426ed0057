#pragma once

// Subcommand dispatch for the qwalk command-line tool.

#include <string>
#include <vector>

namespace qwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;

// Coins whose squared norm is within this distance of 1 are rescaled to unit
// norm; anything further off is rejected. Covers decimals such as 0.70710678.
inline constexpr double kCoinInputTolerance = 1e-6;

// Runs one subcommand. tokens excludes the program name.
int dispatch(const std::vector<std::string>& tokens);

int run(int argc, char** argv);

}  // namespace qwalk::cli
