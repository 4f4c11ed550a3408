#pragma once

#include <ostream>

namespace mindiag::cli {

// Runs one command line. Returns 0 on success, 1 on input or usage errors and
// 2 on numeric or degeneracy errors. Messages go to err; primary output goes
// to out unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mindiag::cli
