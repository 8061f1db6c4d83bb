#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace here::cli {

// Exit codes: 0 ok, 1 I/O or parse failure, 2 usage error, 3 registration
// signal (name printed on err).
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSignal = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace here::cli
