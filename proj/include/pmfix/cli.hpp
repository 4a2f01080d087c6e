#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmfix::cli {

/// Runs one pmfix command. `args` excludes the program name. Returns the
/// process exit code:
///   0 success / pass; 1 fail-with-witness; 2 not-found-within-cap;
///   3 non-convergent; 4 converged-but-not-fixed; 5 fixed-point-outside-Up;
///   64 usage error; 65 config parse/validation error; 70 runtime domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmfix::cli
