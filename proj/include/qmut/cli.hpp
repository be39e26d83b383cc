#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmut {

/// Command-line front end. Returns 0 on success, 1 when a check command
/// reaches a negative verdict and 2 on usage errors.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Directory holding the shipped example quivers; QMUT_DATA overrides the build default.
std::string data_dir();

}  // namespace qmut
