#pragma once

#include <string>
#include <vector>

namespace kgex::cli {

/// Exit codes: 0 success, 1 usage, 2 data/config error, 3 backend error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace kgex::cli
