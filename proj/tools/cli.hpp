#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isoplab::cli {

/// Exit codes: 0 every verdict holds, 1 some verdict failed, 2 parse error,
/// 3 budget or overflow, 4 precondition violated.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Reads a flat `key=value` file (blank lines and `#` comments ignored) and
/// appends `--key value` for every key not already given in `args`.
std::vector<std::string> merge_config_file(const std::vector<std::string>& args,
                                           const std::string& path);

}  // namespace isoplab::cli
