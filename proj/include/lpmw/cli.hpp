#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpmw::cli {

/// Runs one CLI invocation. Records stream to `out` one JSON object per
/// line; progress and errors go to `err`. Returns 0 on success, 1 on
/// invalid input, 2 when a mathematical property check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit-code policy shared by every subcommand.
int exit_code_for(bool parsed_ok, bool property_ok);

}  // namespace lpmw::cli
