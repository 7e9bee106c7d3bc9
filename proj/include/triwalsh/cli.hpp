#pragma once

#include <string>
#include <vector>

namespace triwalsh {

// exit codes: 0 all verdicts pass, 1 some exact check failed, 2 invalid input
int cli_run(const std::vector<std::string>& args);

}  // namespace triwalsh
