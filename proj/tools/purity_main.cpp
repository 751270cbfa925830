#include "purity/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return purity::run_cli(argc, argv, std::cout, std::cerr); }
