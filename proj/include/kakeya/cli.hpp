#pragma once

#include <string>
#include <vector>

namespace kakeya {

// Runs one CLI invocation; `args` excludes the program name.
// Exit codes: 0 all criteria pass, 1 criterion failure or runtime error,
// 2 config/schema violation, 3 I/O failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace kakeya
