#pragma once

namespace pfq {

// Command-line entry point; returns the process exit code
// (0 success, 1 property/agreement failure, 2 usage error).
int cli_main(int argc, const char* const* argv);

}  // namespace pfq
