#pragma once

// Command-line front end. Exit codes: 0 all checks passed, 1 solver or
// domain error (JSON error report on stdout), 2 usage error, 3 checks failed
// (failure list on stderr).

#include <ostream>

namespace translab {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace translab
