#ifndef EMDEN_TOOLS_CLI_HPP
#define EMDEN_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace emden::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;     // parse or validation failure
inline constexpr int exit_domain = 2;    // failure while solving or integrating
inline constexpr int exit_tolerance = 3; // compare --tol exceeded

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace emden::cli

#endif
