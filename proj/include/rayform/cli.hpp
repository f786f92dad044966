#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rayform::cli {

/// Runs one `rayform` invocation; `args` excludes the program name.
/// Returns 0 on success, 2 on invalid input, 3 on a failed internal check.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

}  // namespace rayform::cli
