#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace secrecy::cli {

// Exit codes: 0 success, 1 computational infeasibility, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secrecy::cli
