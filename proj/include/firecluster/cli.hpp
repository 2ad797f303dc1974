#pragma once

#include <iosfwd>

namespace firecluster {

// Command-line entry point. Exit codes: 0 ok, 1 runtime failure, 2 usage.
// Data goes to `out`, progress and errors to `err`.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace firecluster
