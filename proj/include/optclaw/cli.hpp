#pragma once

namespace optclaw {

// Command line entry point, callable in-process (tests exercise it without
// spawning). argv follows main() conventions. Returns the process exit
// code: 0 success, 1 invalid configuration, 2 solver failure,
// 3 verification failure.
int run_cli(int argc, const char* const* argv);

}  // namespace optclaw
