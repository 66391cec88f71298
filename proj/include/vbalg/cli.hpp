#ifndef VBALG_CLI_HPP
#define VBALG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vbalg::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage_error = 2;

/* Runs one command line (without the program name). Documents go to out,
   machine-readable error blocks to err. */
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace vbalg::cli

#endif
