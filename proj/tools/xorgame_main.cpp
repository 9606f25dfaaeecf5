#include <iostream>

#include "xorgame/cli.hpp"

int main(int argc, char** argv) { return xorgame::run_cli(argc, argv, std::cout, std::cerr); }
