// Command-line front end. Every subcommand writes exactly one single-line JSON
// record (or one CSV) to stdout or --out; stderr carries only diagnostics.
// Exit codes: 0 success, 1 verification/tie failure, 2 usage or domain error,
// 3 resource cap exceeded.
#pragma once

namespace nearcurve {

int run_cli(int argc, char** argv);

} // namespace nearcurve
