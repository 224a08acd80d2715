#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace valueplan {

/// Exit codes: 0 success, 1 infeasible or invalid project, 2 usage or parse error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace valueplan
