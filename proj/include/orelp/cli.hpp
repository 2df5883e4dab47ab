#pragma once

// Command-line front end. Every command prints one report envelope
// {command, timing, verdict, payload}; only `timing` varies between runs.

#include <iosfwd>
#include <string>
#include <vector>

namespace orelp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFailed = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orelp::cli
