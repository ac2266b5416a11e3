#pragma once

#include <string>
#include <vector>

namespace signsearch {

// Entry point behind the signsearch binary; args exclude the program name.
// Returns the process exit code. Kept callable so tests can drive the CLI
// in-process.
int cli_run(std::vector<std::string> args);

} // namespace signsearch
