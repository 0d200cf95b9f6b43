#include <iostream>

#include "subprod/cli.hpp"

int main(int argc, char** argv) { return subprod::cli::run(argc, argv, std::cout, std::cerr); }
