#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarse_menger::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kMalformed = 1;
inline constexpr int kViolation = 2;
inline constexpr int kCapacity = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse_menger::cli
