#include "optclaw/cli.hpp"

int main(int argc, char** argv) { return optclaw::run_cli(argc, argv); }
