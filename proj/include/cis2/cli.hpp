#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cis2::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr unsigned long long kDefaultSeed = 42;

// Entry point shared by the binary and the tests. `args` excludes the
// program name. Results go to `out` unless --output is given; diagnostics,
// drop reports and per-entry errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cis2::cli
