#pragma once

#include <iosfwd>

namespace macc {

// Exit codes: 0 success, 1 validation/verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace macc
