#ifndef BCAST_TOOLS_CLI_HPP_
#define BCAST_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "bcast/epsilon.hpp"

namespace bcast::cli {

enum ExitCode { kOk = 0, kBadArgs = 1, kInfeasible = 2, kInternal = 3 };

// "1/4" or a decimal.
Epsilon parse_epsilon(const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bcast::cli

#endif  // BCAST_TOOLS_CLI_HPP_
