#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wkat {

// Exit codes: 0 success, 1 negative verdict, 2 usage or input error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;

// args[0] is the program name, as in argv.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wkat
