#include "commands.hpp"

int main(int argc, char** argv) { return plurality::cli::run_cli(argc, argv); }
