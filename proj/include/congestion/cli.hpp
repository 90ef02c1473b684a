#pragma once

namespace congestion {

// Entry point behind the `sim` binary; separated out so tests can drive the
// CLI in-process. Returns the process exit code: 0 on success, 1 on
// configuration errors, 2 on unexpected failures.
int run_cli(int argc, const char* const* argv);

}  // namespace congestion
