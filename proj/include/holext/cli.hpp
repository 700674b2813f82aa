#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace holext {

/// Entry point of the `holext` tool. Exit codes: 0 success, 1 unreadable or
/// malformed input, 2 solver error or failed verification.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holext
