#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dw::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs one dwtool invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dw::cli
