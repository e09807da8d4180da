// Command-line front end. Exit codes: 0 success, 1 usage error, 2 precondition
// or other library error, 3 resource limit.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bootperc {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* version();

} // namespace bootperc
