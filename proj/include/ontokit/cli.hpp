#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ontokit {

enum ExitStatus { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// Runs one command line (args[0] is the program name). Never prompts unless
// --interactive is given, in which case answers are read from `in`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

}  // namespace ontokit
