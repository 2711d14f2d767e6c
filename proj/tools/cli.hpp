// Command-line front end.
#pragma once

#include <iosfwd>

namespace kdvtau::tools {

// Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace kdvtau::tools
