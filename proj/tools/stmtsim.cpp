#include "stmtsim/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return stmtsim::run_cli(argc, argv, std::cout, std::cerr); }
