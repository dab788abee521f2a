#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace triqal {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/**
 * Runs one command line (without the program name): check, family, full,
 * pentagon or lens. Returns the exit code; never throws.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace triqal
