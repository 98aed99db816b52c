#include "holo/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return holo::cli::main(argc, argv, std::cout, std::cerr); }
