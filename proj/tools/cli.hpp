#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dendrite::cli {

/// Run one command-line invocation. Report lines go to `out`, one-line
/// diagnostics to `err`. Exit codes: 0 success / property holds, 1 property
/// fails (witness lines emitted), 2 invalid input or contract violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dendrite::cli
