#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pif {

enum ExitCode { exit_ok = 0, exit_verification = 1, exit_usage = 2, exit_certified = 3 };

// Grid "min:max:step": min, min+step, ... while < max, then a final row at max.
std::vector<double> parse_grid(const std::string& spec);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pif
