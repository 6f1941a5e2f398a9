#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fps::cli {

/// Run the command line `args` (without the program name). The result
/// document goes to `out`, trace and diagnostics to `err`. Returns 0 on
/// success, 2 when no closed form was found (partial result still emitted),
/// 1 on errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fps::cli
