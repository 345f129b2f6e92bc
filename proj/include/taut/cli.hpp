#pragma once

// The taut command line. stdout carries the result (JSON or CSV) or a
// structured error; stderr carries exactly one run manifest per invocation.
//
// Exit codes: 0 ok, 1 internal error or failed check, 2 budget exceeded,
// 3 invalid input or unstable (g, n), 4 rank-deficient evaluation grid.

#include <iosfwd>
#include <string>
#include <vector>

namespace taut {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taut
