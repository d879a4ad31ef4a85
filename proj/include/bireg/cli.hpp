#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bireg {

// Exit codes: 0 success, 2 invalid flags or parameters, 1 failure while
// computing. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace bireg
