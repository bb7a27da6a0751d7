#pragma once

#include <iosfwd>

namespace fundrisk {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_data_error = 2,
};

// Entry point of the `fundrisk` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fundrisk
