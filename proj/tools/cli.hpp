#pragma once

#include <iosfwd>

namespace cloneval::cli {

// Runs the command line tool. Returns 0 on success, 1 on a usage error and 2
// when the command itself fails. Regular output goes to `out`, diagnostics
// to `err`; interactive labeling reads answers from `in`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cloneval::cli
