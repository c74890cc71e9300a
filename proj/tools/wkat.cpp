#include "wkat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wkat::run_cli(argc, argv, std::cout, std::cerr); }
