#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace natspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Parses and runs one command. args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, char** argv);

/// "64,128,...,1024" expands the ellipsis by doubling.
std::vector<std::size_t> parse_ladder(const std::string& text);
std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace natspec
