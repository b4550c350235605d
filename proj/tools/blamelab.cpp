#include "blamelab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return blamelab::run_cli(argc, argv, std::cout, std::cerr); }
