#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace floerkit::cli {

/// Runs one subcommand; args exclude the program name.
/// Exit codes: 0 success, 1 failed check or domain error (JSON report on `out`), 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floerkit::cli
