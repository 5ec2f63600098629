#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nij {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDataError = 2;

// Worker count for parallel verification: NIJ_WORKERS if set and positive,
// otherwise the hardware concurrency.
unsigned worker_count();

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nij
