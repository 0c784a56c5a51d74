#include <iostream>

#include "bssvm/cli.hpp"

int main(int argc, char** argv) { return bssvm::run_cli(argc, argv, std::cout, std::cerr); }
