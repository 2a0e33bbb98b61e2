#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "clearvoice/error.hpp"

namespace clearvoice::cli {

// Exit-code contract: 0 success, 1 processing failure, 2 usage/config error
// (also unreadable or structurally broken input files).
int exit_code_for(Errc code);

// Runs the full command line (excluding the program name) against the given
// streams. This is what main() calls and what the integration tests drive
// in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace clearvoice::cli
