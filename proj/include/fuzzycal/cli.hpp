#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzycal {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command-line interface. args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzycal
