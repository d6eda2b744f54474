// cli.hpp - the `senti` command-line tool as a callable function.
//
// Subcommands: synth, convert, split, vectorize, train, evaluate, compare.
// Exit status: 0 success, 1 usage error, 2 data error, 3 internal error.
// Diagnostics go to `err`; tables and summaries go to `out`.

#ifndef SENTI_CLI_HPP
#define SENTI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace senti::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;
inline constexpr int exit_internal = 3;

inline constexpr const char* tool_version = "1.0.0";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace senti::cli

#endif  // SENTI_CLI_HPP
