#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mf {

// Runs one command of the masterfield tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mf
