#include <iostream>

#include "coprime/cli.hpp"

int main(int argc, char** argv) { return coprime::run_cli(argc, argv, std::cout, std::cerr); }
