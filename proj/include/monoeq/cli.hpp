#pragma once

namespace monoeq {

// Full command-line entry point. Returns the process exit code:
// 0 on success (solver outcomes such as max-iterations are results, not
// errors), 1 on usage or validation errors, 2 on I/O or parse errors.
int run_cli(int argc, const char* const* argv);

} // namespace monoeq
