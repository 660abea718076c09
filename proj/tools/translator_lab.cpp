#include <iostream>

#include "translab/cli.hpp"

int main(int argc, char** argv) { return translab::run_cli(argc, argv, std::cout, std::cerr); }
