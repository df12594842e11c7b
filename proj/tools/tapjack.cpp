#include <iostream>

#include "tapjack/cli.hpp"

int main(int argc, char** argv) { return tapjack::cli::run(argc, argv, std::cout, std::cerr); }
