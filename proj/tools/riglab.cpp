#include <iostream>

#include "rig/cli.hpp"

int main(int argc, char** argv) { return rig::cli_main(argc, argv, std::cout, std::cerr); }
