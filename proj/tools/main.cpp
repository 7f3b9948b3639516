#include <iostream>

#include "merodiv/cli.hpp"

int main(int argc, char **argv) { return merodiv::cli::run(argc, argv, std::cout, std::cerr); }
