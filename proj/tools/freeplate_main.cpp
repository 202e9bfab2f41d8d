#include <iostream>

#include "freeplate/cli.hpp"

int main(int argc, char** argv) { return freeplate::cli::run(argc, argv, std::cout, std::cerr); }
