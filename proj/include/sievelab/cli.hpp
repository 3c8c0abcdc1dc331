#pragma once

#include <iosfwd>

namespace sievelab {

// Exit codes: 0 success, 1 self-check mismatch (table1), 2 precondition
// violation, 3 resource ceiling.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sievelab
