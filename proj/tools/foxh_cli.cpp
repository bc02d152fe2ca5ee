#include <iostream>

#include "foxh/cli.hpp"

int main(int argc, char** argv) { return foxh::run_cli(argc, argv, std::cout, std::cerr); }
