#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace purity {

// Exit codes: 0 all checks pass, 1 a mathematical check failed or was refused,
// 2 invalid input, validation error or resource refusal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace purity
