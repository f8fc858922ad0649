#include <iostream>

#include "degmlmc/cli.hpp"

int main(int argc, char** argv) { return degmlmc::run_cli(argc, argv, std::cout, std::cerr); }
