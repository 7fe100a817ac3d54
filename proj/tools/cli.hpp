#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zdlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kValidation = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kResourceLimit = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdlab::cli
