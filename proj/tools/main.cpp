#include <iostream>

#include "gdist/cli.hpp"

int main(int argc, char** argv) { return gdist::run_cli(argc, argv, std::cout, std::cerr); }
