#include <iostream>

#include "pif/cli.hpp"

int main(int argc, char** argv) { return pif::run_cli(argc, argv, std::cout, std::cerr); }
