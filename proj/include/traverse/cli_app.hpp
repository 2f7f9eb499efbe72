#ifndef TRAVERSE_CLI_APP_HPP
#define TRAVERSE_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace traverse {

/// Runs the command-line tool. Exit codes: 0 success, 1 runtime failure,
/// 2 malformed input (files, flags), 3 infeasible configuration.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace traverse

#endif
