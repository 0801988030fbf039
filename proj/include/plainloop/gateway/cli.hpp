#pragma once

#include <ostream>

namespace plainloop::gateway {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

// The `plainloop` command line. Usage errors and diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plainloop::gateway
