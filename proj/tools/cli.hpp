#ifndef NILGO_TOOLS_CLI_HPP_
#define NILGO_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace nilgo::cli {

enum ExitCode : int { kPass = 0, kRefuted = 1, kInconclusive = 2, kInputError = 64 };

/// Runs one command line (args excludes the program name). "-" as a file
/// argument reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nilgo::cli

#endif  // NILGO_TOOLS_CLI_HPP_
