#include <iostream>

#include "ac/cli.hpp"

int main(int argc, char** argv) { return ac::run_cli(argc, argv, std::cout, std::cerr); }
