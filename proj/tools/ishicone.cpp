#include <iostream>

#include "ishi/cli.hpp"

int main(int argc, char** argv) { return ishi::cli::run(argc, argv, std::cout, std::cerr); }
