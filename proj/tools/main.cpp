#include <iostream>

#include "plainloop/gateway/cli.hpp"

int main(int argc, char** argv) { return plainloop::gateway::run_cli(argc, argv, std::cout, std::cerr); }
