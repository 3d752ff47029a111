#include <iostream>

#include "ktrans/cli.hpp"

int main(int argc, char** argv) { return ktrans::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
