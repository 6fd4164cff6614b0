#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace autalg {

/// Dispatches one `aut` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 when a law suite reports a failure, 2 on usage,
/// parse or validation problems.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autalg
