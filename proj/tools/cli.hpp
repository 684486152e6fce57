#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sinr {

// Command-line front end, callable in-process for tests. args excludes
// the program name. Exit codes: 0 success, 2 malformed scenario or
// infeasible generation, 3 engine/scenario mismatch, 4 oracle diff
// failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sinr
