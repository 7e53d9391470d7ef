#include <iostream>

#include "falin/cli.hpp"

int main(int argc, char** argv) { return falin::cli::run(argc, argv, std::cout, std::cerr); }
