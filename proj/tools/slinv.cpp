#include <iostream>

#include "slinv/cli.hpp"

int main(int argc, char** argv) { return slinv::cli::main(argc, argv, std::cout, std::cerr); }
