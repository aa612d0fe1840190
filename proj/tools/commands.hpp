#pragma once

namespace plurality::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage/config error.
int run_cli(int argc, const char* const* argv);

}  // namespace plurality::cli
