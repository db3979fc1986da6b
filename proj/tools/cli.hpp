#pragma once

#include <iosfwd>

namespace zmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// zmc-noid {mesh|verify|levels|report} [flags]; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace zmc::cli
