#pragma once

#include <string>
#include <vector>

namespace heli {

// Command-line front end. args excludes the program name. Returns the
// process exit status (0 on success).
int run_cli(const std::vector<std::string>& args);

}  // namespace heli
