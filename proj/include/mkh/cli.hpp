#pragma once

// Command-line front end: compute | euler | ss | gr-dump | moves.

#include <iosfwd>
#include <string>
#include <vector>

namespace mkh::cli {

enum ExitCode : int {
  ok = 0,
  failure = 1,
  parse_error = 2,
  validation_error = 3,
  bad_options = 4,
  file_not_found = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkh::cli
