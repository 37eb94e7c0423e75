#include <iostream>

#include "delkit/cli.hpp"

int main(int argc, char** argv) { return delkit::cli::main(argc, argv, std::cout, std::cerr); }
