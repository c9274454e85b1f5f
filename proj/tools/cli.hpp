#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace indictts::cli {

// Parses args (without the program name), dispatches to one subcommand and
// returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace indictts::cli
