#pragma once

namespace sa {

// Parses and runs one command line. Exit codes: 0 when the command succeeds
// and any checked property holds, 1 when the property fails to hold (axiom
// violations, no witness, not distinguished), 2 on malformed input or usage
// errors.
int run_cli(int argc, const char* const* argv);

}  // namespace sa
