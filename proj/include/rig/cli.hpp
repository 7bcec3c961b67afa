#pragma once

#include <iosfwd>

namespace rig {

/// Entry point of the riglab command line tool. Returns 0 on success, 1 on
/// usage or configuration errors and 2 on runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rig
