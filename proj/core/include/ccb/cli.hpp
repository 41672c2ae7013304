#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccb {

// Runs one CLI invocation; emits a single JSON document on `out`.
// Exit codes: 0 success, 1 usage error, 2 hypothesis failure, 3 inconclusive.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

extern const char* const kCliVersion;

}  // namespace ccb
