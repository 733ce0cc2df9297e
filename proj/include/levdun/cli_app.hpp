#pragma once

#include <iosfwd>

namespace levdun::cli {

// Entry point shared by the levdun binary and the tests. Returns the
// process exit code: 0 success, 2 validation error, 3 numeric or
// convergence failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levdun::cli
