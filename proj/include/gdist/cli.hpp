#pragma once

#include <iosfwd>

namespace gdist {

// Entry point of the `gdist` executable. Results go to `out` (or the files
// named by --out); failures print one JSON line {"error": {...}} to `err`
// and return a nonzero status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gdist
