#pragma once

#include <string>
#include <vector>

namespace bostat {

const char* tool_version();

// Parses and runs one command-line invocation (argv without the program
// name). Returns the process exit code: 0 success, 2 usage error, 1 runtime
// failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace bostat
