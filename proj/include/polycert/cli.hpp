#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polycert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;
inline constexpr int kExitUnbounded = 10;
inline constexpr int kExitInconclusive = 11;

/// Entry point of the `certify` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycert::cli
