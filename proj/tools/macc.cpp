#include "macc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return macc::run_cli(argc, argv, std::cout, std::cerr); }
