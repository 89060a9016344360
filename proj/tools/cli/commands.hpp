#pragma once

// The `ldproj` command line: sample, rate, mc, verify, probe.
//
// Exit codes: 0 ok, 1 verification or numerical failure, 2 usage error,
// 3 mathematical degeneracy, 4 record-store I/O failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace ldproj::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDegenerate = 3, kIo = 4 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldproj::cli
