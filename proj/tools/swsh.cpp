// Exit status: 0 success, 1 configuration or validation error, 2 verification failure.

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return swsh::cli::run(argc, argv, std::cout, std::cerr); }
