#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bugfix {

/// Runs the `bugfix` command line (arguments without the program name).
/// Returns 0 on success, 1 when diagnostics or failed checks were reported,
/// 2 on usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bugfix
